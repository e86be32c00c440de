"""Lattice primitives, staircase continued fractions and the attracted walk.

A point of the first quadrant is a plain ``LatticePoint``.  For a ray through
coprime ``(p, q)`` with ``p <= q`` the staircase continued fraction
``SC(q/p) = [[d_1, ..., d_p]]`` comes from the iterated divisions

    q + r_{k-1} = d_k * p + r_k,   r_0 = 0,

and the digits are the heights of the steps of the walk that starts at
``base + (1, 1)`` and is pulled towards the ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import NamedTuple


class LatticePoint(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return LatticePoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return LatticePoint(self.x - other[0], self.y - other[1])

    def scale(self, s: int) -> "LatticePoint":
        return LatticePoint(s * self.x, s * self.y)

    def dot(self, other) -> int:
        return self.x * other[0] + self.y * other[1]

    def norm1(self) -> int:
        """Taxicab weight ``|a| = x + y``."""
        return self.x + self.y

    def leq(self, other) -> bool:
        """Componentwise partial order."""
        return self.x <= other[0] and self.y <= other[1]

    def swapped(self) -> "LatticePoint":
        return LatticePoint(self.y, self.x)


E1 = LatticePoint(1, 0)
E2 = LatticePoint(0, 1)
ONE = LatticePoint(1, 1)


def det(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def gcd_primitive(v) -> tuple[int, LatticePoint]:
    """Split a nonzero vector into ``g * prim`` with ``prim`` primitive."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no primitive direction")
    g = gcd(x, y)
    return g, LatticePoint(x // g, y // g)


def side_of_ray(point, ray) -> int:
    """+1 if ``point`` is strictly above the ray (larger slope), -1 if strictly
    below, 0 if on the line through it."""
    d = det(ray, point)
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class StaircaseCF:
    p: int
    q: int
    digits: tuple[int, ...]
    remainders: tuple[int, ...]

    def partial_sums(self) -> tuple[int, ...]:
        """``D_k = d_1 + ... + d_k`` for ``k = 1..p``."""
        out, acc = [], 0
        for d in self.digits:
            acc += d
            out.append(acc)
        return tuple(out)

    def __str__(self) -> str:
        return "[[" + ",".join(map(str, self.digits)) + "]]"


def sc_continued_fraction(p: int, q: int) -> StaircaseCF:
    if p <= 0 or q <= 0 or p > q or gcd(p, q) != 1:
        raise ValueError(f"SC({q}/{p}) requires coprime positive p <= q")
    digits, rems = [], []
    r = 0
    while True:
        d, r = divmod(q + r, p)
        digits.append(d)
        rems.append(r)
        if r == 0:
            break
    return StaircaseCF(p, q, tuple(digits), tuple(rems))


class Step(str, Enum):
    H = "H"
    V = "V"

    @property
    def vector(self) -> LatticePoint:
        return E1 if self is Step.H else E2


@dataclass(frozen=True)
class Walk:
    start: LatticePoint
    steps: tuple[Step, ...]

    @property
    def points(self) -> tuple[LatticePoint, ...]:
        pts = [self.start]
        for s in self.steps:
            pts.append(pts[-1] + s.vector)
        return tuple(pts)

    def to_json(self) -> dict:
        return {
            "start": list(self.start),
            "steps": "".join(s.value for s in self.steps),
            "points": [list(pt) for pt in self.points],
        }


def staircase_steps(p: int, q: int) -> tuple[Step, ...]:
    sc = sc_continued_fraction(p, q)
    steps: list[Step] = []
    for d in sc.digits[:-1]:
        steps.extend([Step.V] * d)
        steps.append(Step.H)
    steps.extend([Step.V] * (sc.digits[-1] - 1))
    return tuple(steps)


def staircase_walk(p: int, q: int, base=(0, 0)) -> Walk:
    """Walk from ``base + (1, 1)`` to ``base + (p, q)`` towards the ray ``(p, q)``.

    ``base`` must be a nonnegative multiple of ``(p, q)``.  For ``q < p`` swap
    the coordinates before calling.
    """
    base = LatticePoint(*base)
    if base.x < 0 or base.y < 0 or det(base, (p, q)) != 0:
        raise ValueError(f"base {tuple(base)} is not on the ray through ({p},{q})")
    return Walk(base + ONE, staircase_steps(p, q))


def below_ray_staircase(ray) -> list[LatticePoint]:
    """One period of the points strictly below ``ray`` whose left neighbour is
    not (row-wise first points below the ray), for rows ``1..q-1``."""
    p, q = ray
    if p <= q:
        sc = sc_continued_fraction(p, q)
        D = (0,) + sc.partial_sums()
        pts = []
        for i in range(1, p + 1):
            top = D[i] if i < p else q - 1
            pts.extend(LatticePoint(i, j) for j in range(D[i - 1] + 1, top + 1))
        return pts
    return [pt.swapped() for pt in above_ray_staircase((q, p))]


def above_ray_staircase(ray) -> list[LatticePoint]:
    """One period of the lowest points strictly above ``ray`` in columns ``1..p-1``."""
    p, q = ray
    if p <= q:
        D = sc_continued_fraction(p, q).partial_sums()
        return [LatticePoint(k, D[k - 1] + 1) for k in range(1, p)]
    return [pt.swapped() for pt in below_ray_staircase((q, p))]


def parallelepiped_points(a, b) -> list[LatticePoint]:
    """Lattice points of the half-open parallelepiped ``{s a + t b : 0 < s, t <= 1}``.

    Every lattice point in the open cone spanned by ``a`` and ``b`` is uniquely
    one of these plus a nonnegative integer combination of ``a`` and ``b``.
    """
    n = abs(det(a, b))
    if n == 0:
        raise ValueError("degenerate cone")
    # point = (i a + j b) / n with integer 0 < i, j <= n
    xs = [a[0], b[0]]
    ys = [a[1], b[1]]
    out = []
    lo_x, hi_x = min(0, *xs, xs[0] + xs[1]), max(0, *xs, xs[0] + xs[1])
    lo_y, hi_y = min(0, *ys, ys[0] + ys[1]), max(0, *ys, ys[0] + ys[1])
    sgn = 1 if det(a, b) > 0 else -1
    for x in range(lo_x, hi_x + 1):
        for y in range(lo_y, hi_y + 1):
            # coordinates in the (a, b) basis, scaled by n
            i = sgn * det((x, y), b)
            j = sgn * det(a, (x, y))
            if 0 < i <= n and 0 < j <= n:
                out.append(LatticePoint(x, y))
    return sorted(out)
