"""Generating series of the contact loci as exact rational functions in ``u, v``.

Denominators are kept factored into the irreducible pieces ``Phi_n(u^a v^b)``
(cyclotomic polynomials evaluated at a monomial with primitive exponent
``(a, b)``), normalized to constant term 1 so that ``Phi_1(w) = 1 - w``.  Since
``1 - w^N`` is the product of ``Phi_d(w)`` over ``d | N``, every factor of the
form ``1 - u^a v^b`` splits into such pieces, distinct pieces are coprime, and
lcm, reduction and pole multiplicities become exact bookkeeping.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from .jetgraph import hyperplane_contributors
from .lattice import (
    LatticePoint,
    above_ray_staircase,
    below_ray_staircase,
    det,
    parallelepiped_points,
)
from .polygon import CurveData, nu_polygon

Exp = tuple[int, int]


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class BivarPoly:
    """Sparse polynomial in ``u, v`` with exact (integer or rational) coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Exp, object] | Iterable[tuple[Exp, object]] = ()):
        items = terms.items() if isinstance(terms, (dict, Mapping)) else terms
        t: dict[Exp, object] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent ({a},{b})")
            t[(a, b)] = t.get((a, b), 0) + c
        self._t = {k: _norm(c) for k, c in t.items() if c != 0}

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BivarPoly":
        return cls({(a, b): c})

    @property
    def terms(self) -> dict[Exp, object]:
        return dict(self._t)

    def coeff(self, a: int, b: int):
        return self._t.get((a, b), 0)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self) -> int:
        return len(self._t)

    def __add__(self, other) -> "BivarPoly":
        other = _as_bpoly(other)
        t = dict(self._t)
        for k, c in other._t.items():
            t[k] = t.get(k, 0) + c
        return BivarPoly(t)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -c for k, c in self._t.items()})

    def __sub__(self, other) -> "BivarPoly":
        return self + (-_as_bpoly(other))

    def __rsub__(self, other) -> "BivarPoly":
        return _as_bpoly(other) - self

    def __mul__(self, other) -> "BivarPoly":
        other = _as_bpoly(other)
        t: dict[Exp, object] = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in other._t.items():
                k = (a1 + a2, b1 + b2)
                t[k] = t.get(k, 0) + c1 * c2
        return BivarPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivarPoly":
        out, base = BivarPoly({(0, 0): 1}), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _as_bpoly(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def truncate_v(self, M: int) -> "BivarPoly":
        """Drop every term of ``v``-degree above ``M``."""
        return BivarPoly({k: c for k, c in self._t.items() if k[1] <= M})

    def swapped_uv(self) -> "BivarPoly":
        return BivarPoly({(b, a): c for (a, b), c in self._t.items()})

    def leading(self) -> tuple[Exp, object]:
        k = max(self._t)
        return k, self._t[k]

    def divmod(self, g: "BivarPoly") -> tuple["BivarPoly", "BivarPoly"]:
        """Division by ``g`` w.r.t. the lex order ``u > v``; ``r == 0`` iff ``g | self``."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        (ga, gb), gc = g.leading()
        f = dict(self._t)
        heap = [(-a, -b) for a, b in f]  # max-heap on lex order, stale keys skipped
        heapq.heapify(heap)
        q: dict[Exp, object] = {}
        r: dict[Exp, object] = {}
        while heap:
            k = (-heap[0][0], -heap[0][1])
            heapq.heappop(heap)
            if k not in f:
                continue
            c = f[k]
            if k[0] >= ga and k[1] >= gb:
                s = (k[0] - ga, k[1] - gb)
                qc = Fraction(c) / gc if not isinstance(c, int) or c % gc else c // gc
                q[s] = qc
                for (a, b), d in g._t.items():
                    kk = (a + s[0], b + s[1])
                    old = f.get(kk)
                    val = (0 if old is None else old) - qc * d
                    if val == 0:
                        f.pop(kk, None)
                    else:
                        if old is None:
                            heapq.heappush(heap, (-kk[0], -kk[1]))
                        f[kk] = val
            else:
                r[k] = c
                del f[k]
        return BivarPoly(q), BivarPoly(r)

    def sorted_terms(self) -> list[tuple[Exp, object]]:
        """Terms by ascending ``v``-degree, then ascending ``u``-degree."""
        return sorted(self._t.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_json(self) -> list:
        return [[a, b, _json_num(c)] for (a, b), c in self.sorted_terms()]

    def __str__(self) -> str:
        return _format_terms(self.sorted_terms())

    def __repr__(self) -> str:
        return f"BivarPoly({self})"


def _json_num(c):
    return c if isinstance(c, int) else str(c)


def _as_bpoly(v) -> BivarPoly:
    if isinstance(v, BivarPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return BivarPoly({(0, 0): v})
    raise TypeError(f"cannot use {type(v).__name__} as a polynomial")


def _mono(a: int, b: int) -> str:
    parts = []
    for name, e in (("u", a), ("v", b)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_terms(terms) -> str:
    if not terms:
        return "0"
    out = []
    for i, ((a, b), c) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        mono = _mono(a, b)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


ONE_POLY = BivarPoly({(0, 0): 1})


# ---------------------------------------------------------------------------
# cyclotomic factors


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n`` (constant first), normalized so ``Phi_1 = 1 - w``."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if n == 1:
        return (1, -1)
    # 1 - w^n divided by every Phi_d, d | n, d < n
    num = [1] + [0] * (n - 1) + [-1]
    for d in range(1, n):
        if n % d == 0:
            num = _udiv_exact(num, list(cyclotomic(d)))
    return tuple(num)


def _udiv_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of univariate integer polynomials with ``b[0] = 1``."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q)):
        c = a[i]
        q[i] = c
        for j, d in enumerate(b):
            a[i + j] -= c * d
    if any(a):
        raise ArithmeticError("inexact univariate division")
    return q


def _series_inverse(p: list[int], n: int) -> list:
    """First ``n + 1`` coefficients of ``1 / p`` where ``p[0] = 1``."""
    inv = [0] * (n + 1)
    inv[0] = 1
    for k in range(1, n + 1):
        s = 0
        for j in range(1, min(k, len(p) - 1) + 1):
            s += p[j] * inv[k - j]
        inv[k] = -s
    return inv


class Factor(NamedTuple):
    """``Phi_order(u^a v^b)`` with ``(a, b) = direction`` primitive."""

    direction: Exp
    order: int

    def poly(self) -> BivarPoly:
        return _factor_poly(self)

    def univariate(self) -> tuple[int, ...]:
        return cyclotomic(self.order)

    def __str__(self) -> str:
        return "(" + str(self.poly()) + ")"


@lru_cache(maxsize=None)
def _factor_poly(f: Factor) -> BivarPoly:
    a, b = f.direction
    return BivarPoly({(k * a, k * b): c for k, c in enumerate(cyclotomic(f.order)) if c})


def one_minus_factors(a: int, b: int) -> Counter:
    """Irreducible pieces of ``1 - u^a v^b``."""
    if a == 0 and b == 0:
        raise ValueError("1 - u^0 v^0 is zero")
    n = gcd(a, b)
    d = (a // n, b // n)
    return Counter({Factor(d, k): 1 for k in range(1, n + 1) if n % k == 0})


def _denominator_poly(den: Mapping[Factor, int]) -> BivarPoly:
    out = ONE_POLY
    for f, k in sorted(den.items()):
        out = out * f.poly() ** k
    return out


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class BivarRational:
    numerator: BivarPoly
    denominator: tuple[tuple[Factor, int], ...] = ()

    @classmethod
    def make(cls, numerator, denominator: Mapping[Factor, int] | None = None) -> "BivarRational":
        den = {f: k for f, k in (denominator or {}).items() if k > 0}
        return cls(_as_bpoly(numerator), tuple(sorted(den.items())))

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BivarRational":
        return cls.make(BivarPoly.monomial(a, b, c))

    @classmethod
    def geometric(cls, a: int, b: int) -> "BivarRational":
        """``1 / (1 - u^a v^b)``."""
        return cls.make(ONE_POLY, one_minus_factors(a, b))

    @property
    def den(self) -> dict[Factor, int]:
        return dict(self.denominator)

    def denominator_poly(self) -> BivarPoly:
        return _denominator_poly(self.den)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def _lift(self, target: Mapping[Factor, int]) -> BivarPoly:
        """Numerator over the common denominator ``target``."""
        mine = self.den
        extra = {f: k - mine.get(f, 0) for f, k in target.items()}
        return self.numerator * _denominator_poly(extra)

    def __add__(self, other) -> "BivarRational":
        other = _as_rational(other)
        a, b = self.den, other.den
        lcm = {f: max(a.get(f, 0), b.get(f, 0)) for f in set(a) | set(b)}
        return BivarRational.make(self._lift(lcm) + other._lift(lcm), lcm).reduced()

    __radd__ = __add__

    def __neg__(self) -> "BivarRational":
        return BivarRational(-self.numerator, self.denominator)

    def __sub__(self, other) -> "BivarRational":
        return self + (-_as_rational(other))

    def __rsub__(self, other) -> "BivarRational":
        return _as_rational(other) - self

    def __mul__(self, other) -> "BivarRational":
        other = _as_rational(other)
        den = Counter(self.den)
        den.update(other.den)
        return BivarRational.make(self.numerator * other.numerator, den).reduced()

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        """Exact equality by cross-multiplication over the common denominator."""
        try:
            other = _as_rational(other)
        except TypeError:
            return NotImplemented
        a, b = self.den, other.den
        lcm = {f: max(a.get(f, 0), b.get(f, 0)) for f in set(a) | set(b)}
        return self._lift(lcm) == other._lift(lcm)

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.numerator, r.denominator))

    def reduced(self) -> "BivarRational":
        """Cancel every denominator factor that divides the numerator."""
        if self.numerator.is_zero():
            return BivarRational(BivarPoly())
        num = self.numerator
        den = self.den
        for f in sorted(den):
            while den[f] > 0:
                q, r = num.divmod(f.poly())
                if not r.is_zero():
                    break
                num = q
                den[f] -= 1
        return BivarRational.make(num, den)

    def swapped_uv(self) -> "BivarRational":
        den = {Factor(f.direction[::-1], f.order): k for f, k in self.denominator}
        return BivarRational.make(self.numerator.swapped_uv(), den)

    def truncate(self, M: int) -> BivarPoly:
        return truncate(self, M)

    def denominator_blocks(self) -> tuple[list[tuple[Exp, int, int]], list[tuple[Factor, int]]]:
        """Group factors into ``(1 - w^n)^k`` blocks; leftovers stay as cyclotomic pieces.

        Returns ``([(direction, n, k)], [(factor, k)])``.
        """
        by_dir: dict[Exp, Counter] = {}
        for f, k in self.denominator:
            by_dir.setdefault(f.direction, Counter())[f.order] += k
        blocks: Counter = Counter()
        left: list[tuple[Factor, int]] = []
        for d in sorted(by_dir):
            c = by_dir[d]
            while True:
                full = [
                    n for n in c if c[n] > 0 and all(c[e] > 0 for e in range(1, n + 1) if n % e == 0)
                ]
                if not full:
                    break
                n = max(full)
                for e in range(1, n + 1):
                    if n % e == 0:
                        c[e] -= 1
                blocks[(d, n)] += 1
            left.extend((Factor(d, n), k) for n, k in sorted(c.items()) if k > 0)
        return [(d, n, k) for (d, n), k in sorted(blocks.items())], left

    def denominator_text(self) -> str:
        blocks, left = self.denominator_blocks()
        parts = []
        for (a, b), n, k in blocks:
            s = f"(1 - {_mono(n * a, n * b)})"
            parts.append(s if k == 1 else f"{s}^{k}")
        for f, k in left:
            parts.append(str(f) if k == 1 else f"{f}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        num = str(self.numerator)
        if not self.denominator:
            return num
        if len(self.numerator) > 1:
            num = f"({num})"
        return f"{num}/({self.denominator_text()})"

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": [
                {"direction": list(f.direction), "cyclotomic_order": f.order, "multiplicity": k}
                for f, k in self.denominator
            ],
            "text": str(self),
        }


def _as_rational(v) -> BivarRational:
    if isinstance(v, BivarRational):
        return v
    return BivarRational.make(_as_bpoly(v))


def truncate(r: BivarRational, M: int) -> BivarPoly:
    """The polynomial congruent to ``r`` modulo ``v^(M+1)``."""
    if M < 0:
        raise ValueError("truncation order must be >= 0")
    by_dir: dict[Exp, list[int]] = {}
    for f, k in r.denominator:
        a, b = f.direction
        if b == 0:
            raise ValueError(
                f"factor {f} has no expansion in powers of v (it involves u only)"
            )
        p = by_dir.get(f.direction, [1])
        for _ in range(k):
            p = _umul(p, list(f.univariate()))
        by_dir[f.direction] = p
    out = r.numerator.truncate_v(M)
    for (a, b), p in sorted(by_dir.items()):
        inv = _series_inverse(p, M // b)
        series = BivarPoly({(k * a, k * b): c for k, c in enumerate(inv) if c})
        out = (out * series).truncate_v(M)
    return out


def _umul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class SeriesPiece:
    """One summand of the closed form, kept unreduced for display."""

    name: str
    value: BivarRational
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "value": self.value.to_json()}
        if self.note:
            out["note"] = self.note
        return out


def ray_monomial(curve: CurveData, i: int) -> Exp:
    """Exponent pair ``(|alpha_i|, nu_{alpha_i}(f))`` of the ray series ``H_T``."""
    ray = curve.rays[i - 1]
    return ray.primitive.norm1(), ray.nu_on_ray


def _ray_series(a: int, b: int) -> BivarRational:
    """``X / (1 - X)`` for ``X = u^a v^b``."""
    return BivarRational.make(BivarPoly.monomial(a, b), one_minus_factors(a, b))


def _points_series(points: Iterable[LatticePoint], vertex) -> BivarPoly:
    return BivarPoly([((pt.norm1(), pt.dot(vertex)), 1) for pt in points])


def series_H_pieces(curve: CurveData) -> list[SeriesPiece]:
    rays = curve.rays
    verts = curve.vertices
    pieces = []
    for r in rays:
        a, b = ray_monomial(curve, r.index)
        pieces.append(SeriesPiece(f"ray {r.index}", _ray_series(a, b)))
    low, high = rays[0], rays[-1]
    a, b = ray_monomial(curve, low.index)
    below = _points_series(below_ray_staircase(low.primitive), verts[0])
    pieces.append(
        SeriesPiece("below lowest ray", BivarRational.make(below, one_minus_factors(a, b)))
    )
    a, b = ray_monomial(curve, high.index)
    above = _points_series(above_ray_staircase(high.primitive), verts[-1])
    pieces.append(
        SeriesPiece("above highest ray", BivarRational.make(above, one_minus_factors(a, b)))
    )
    for r1, r2 in zip(rays[:-1], rays[1:]):
        vertex = verts[r2.index - 1]
        cell = parallelepiped_points(r1.primitive, r2.primitive)
        den = one_minus_factors(*ray_monomial(curve, r1.index))
        den.update(one_minus_factors(*ray_monomial(curve, r2.index)))
        note = f"{len(cell)} fundamental cell point(s)"
        pieces.append(
            SeriesPiece(
                f"cone between rays {r1.index} and {r2.index}",
                BivarRational.make(_points_series(cell, vertex), den),
                note,
            )
        )
    return pieces


def product_form_cone_pieces(curve: CurveData) -> list[SeriesPiece]:
    """The product ``H_{T_i} H_{T_{i+1}}`` for each interior cone.

    It only counts integer combinations of the two ray generators, so it agrees
    with the interior sum exactly when the cone is unimodular.
    """
    out = []
    rays = curve.rays
    for r1, r2 in zip(rays[:-1], rays[1:]):
        unimodular = abs(det(r1.primitive, r2.primitive)) == 1
        value = _ray_series(*ray_monomial(curve, r1.index)) * _ray_series(
            *ray_monomial(curve, r2.index)
        )
        out.append(
            SeriesPiece(
                f"cone between rays {r1.index} and {r2.index} (product form)",
                value,
                "unimodular-only" + ("" if unimodular else "; differs here"),
            )
        )
    return out


def _sum(values: Iterable[BivarRational]) -> BivarRational:
    """Sum over one common denominator, reduced once at the end."""
    values = list(values)
    lcm: dict[Factor, int] = {}
    for v in values:
        for f, k in v.denominator:
            lcm[f] = max(lcm.get(f, 0), k)
    num = BivarPoly()
    for v in values:
        num = num + v._lift(lcm)
    return BivarRational.make(num, lcm).reduced()


def series_H(curve: CurveData) -> BivarRational:
    return _sum(p.value for p in series_H_pieces(curve))


def series_R_pieces(curve: CurveData) -> list[SeriesPiece]:
    pieces = []
    for r in curve.rays:
        a, b = ray_monomial(curve, r.index)
        value = BivarRational.make(
            BivarPoly.monomial(1, 0, r.branch_count), one_minus_factors(1, 1)
        ) * _ray_series(a, b)
        pieces.append(SeriesPiece(f"branches on ray {r.index}", value, f"r = {r.branch_count}"))
    return pieces


def series_R(curve: CurveData) -> BivarRational:
    return _sum(p.value for p in series_R_pieces(curve))


def series_G(curve: CurveData) -> BivarRational:
    return series_H(curve) + series_R(curve)


def enumerate_series(curve: CurveData, M: int) -> BivarPoly:
    """Brute-force ``G mod v^(M+1)`` straight from the component list."""
    if M < 1:
        raise ValueError("enumeration order must be >= 1")
    terms: Counter = Counter()
    for b in hyperplane_contributors(curve, M):
        terms[(b.norm1(), nu_polygon(curve, b))] += 1
    for r in curve.rays:
        s = 1
        while s * r.nu_on_ray <= M:
            alpha = r.primitive.scale(s)
            n = s * r.nu_on_ray
            for m in range(n, M + 1):
                terms[(1 + alpha.norm1() + m - n, m)] += r.branch_count
            s += 1
    return BivarPoly(terms)


# ---------------------------------------------------------------------------
# poles


@dataclass(frozen=True)
class PoleFactor:
    factor: Factor
    multiplicity: int
    remainder_terms: int  # terms of the numerator modulo the factor (> 0 certifies)

    @property
    def certified(self) -> bool:
        return self.multiplicity >= 1 and self.remainder_terms > 0

    def to_json(self) -> dict:
        return {
            "factor": str(self.factor),
            "direction": list(self.factor.direction),
            "cyclotomic_order": self.factor.order,
            "multiplicity": self.multiplicity,
            "certificate": {
                "power_divides_denominator": True,
                "numerator_remainder_terms": self.remainder_terms,
            },
        }


@dataclass(frozen=True)
class PoleFamily:
    kind: str  # "diagonal" or "ray"
    ray: int = 0
    alpha: tuple[int, int] = (1, 1)
    vertex: tuple[int, int] = (0, 0)
    delta: int = 1
    factors: tuple[PoleFactor, ...] = ()

    @property
    def exponent(self) -> Exp:
        return self.alpha[0] + self.alpha[1], self.alpha[0] * self.vertex[0] + self.alpha[1] * self.vertex[1]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "factors": [f.to_json() for f in self.factors]}
        if self.kind == "ray":
            out.update(
                ray=self.ray,
                alpha=list(self.alpha),
                vertex=list(self.vertex),
                exponent=list(self.exponent),
                delta=self.delta,
            )
        return out


@dataclass(frozen=True)
class PoleReport:
    series: BivarRational
    families: tuple[PoleFamily, ...]
    unexplained: tuple[PoleFactor, ...] = field(default=())

    def multiplicity(self, factor: Factor) -> int:
        return self.series.den.get(factor, 0)

    def to_json(self) -> dict:
        return {
            "denominator": self.series.denominator_text(),
            "families": [f.to_json() for f in self.families],
            "unexplained": [f.to_json() for f in self.unexplained],
        }


def _certify(series: BivarRational, f: Factor, k: int) -> PoleFactor:
    _, r = series.numerator.divmod(f.poly())
    return PoleFactor(f, k, len(r))


def poles(curve: CurveData) -> PoleReport:
    g = series_G(curve).reduced()
    den = g.den
    used: set[Factor] = set()
    families = []
    diag = [_certify(g, f, k) for f, k in sorted(den.items()) if f == Factor((1, 1), 1)]
    used.update(p.factor for p in diag)
    families.append(PoleFamily("diagonal", factors=tuple(diag)))
    for r in curve.rays:
        vertex = curve.vertices[r.index - 1]
        a, b = ray_monomial(curve, r.index)
        delta = gcd(a, b)
        direction = (a // delta, b // delta)
        found = [
            _certify(g, f, k)
            for f, k in sorted(den.items())
            if f.direction == direction and delta % f.order == 0
        ]
        used.update(p.factor for p in found)
        families.append(
            PoleFamily("ray", r.index, tuple(r.primitive), tuple(vertex), delta, tuple(found))
        )
    rest = tuple(_certify(g, f, k) for f, k in sorted(den.items()) if f not in used)
    return PoleReport(g, tuple(families), rest)
