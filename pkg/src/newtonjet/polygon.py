"""Newton polygon at the origin, tropical rays and input validation."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from .lattice import LatticePoint, det
from .poly import SparsePoly


class ValidationError(ValueError):
    """Input outside the class of Newton non-degenerate singular plane curves."""

    def __init__(self, code: str, message: str, datum=None):
        super().__init__(message)
        self.code = code
        self.datum = datum


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[LatticePoint, ...]

    @property
    def faces(self) -> tuple[tuple[LatticePoint, LatticePoint], ...]:
        v = self.vertices
        return tuple(zip(v[:-1], v[1:]))

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class TropicalRay:
    index: int  # 1-based, ordered by increasing slope
    primitive: LatticePoint
    branch_count: int
    nu_on_ray: int
    face_poly: tuple[Fraction, ...]  # h(T) coefficients, constant term first

    @property
    def delta(self) -> int:
        return gcd(self.primitive.norm1(), self.nu_on_ray)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "primitive": list(self.primitive),
            "branch_count": self.branch_count,
            "nu": self.nu_on_ray,
            "face_poly": [str(c) for c in self.face_poly],
        }


@dataclass(frozen=True)
class CurveData:
    poly: SparsePoly
    polygon: NewtonPolygon
    rays: tuple[TropicalRay, ...]
    swapped: bool = False

    @property
    def vertices(self) -> tuple[LatticePoint, ...]:
        return self.polygon.vertices

    @property
    def t(self) -> int:
        return len(self.rays)

    def nu(self, g) -> int:
        return nu_polygon(self, g)

    def ray_of(self, point) -> TropicalRay | None:
        """The tropical ray through ``point``, if any."""
        for r in self.rays:
            if det(r.primitive, point) == 0:
                return r
        return None


def newton_polygon(f: SparsePoly) -> NewtonPolygon:
    if f.is_zero():
        raise ValidationError("zero", "the zero polynomial defines no curve")
    if f.coeff(0, 0) != 0:
        raise ValidationError("origin", "curve misses the origin: constant term is nonzero", (0, 0))
    supp = f.support()
    if all(a > 0 for a, _ in supp):
        raise ValidationError(
            "axis", "curve contains a coordinate axis, out of scope (divisible by x)", "x"
        )
    if all(b > 0 for _, b in supp):
        raise ValidationError(
            "axis", "curve contains a coordinate axis, out of scope (divisible by y)", "y"
        )
    pts = sorted(supp)
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2 and det(
            (hull[-1][0] - hull[-2][0], hull[-1][1] - hull[-2][1]),
            (p[0] - hull[-2][0], p[1] - hull[-2][1]),
        ) <= 0:
            hull.pop()
        hull.append(p)
    verts = [hull[0]]
    for p in hull[1:]:
        if p[1] >= verts[-1][1]:
            break
        verts.append(p)
    return NewtonPolygon(tuple(LatticePoint(*v) for v in verts))


def tropical_rays(f: SparsePoly, polygon: NewtonPolygon) -> tuple[TropicalRay, ...]:
    rays = []
    for i, (s, s_next) in enumerate(polygon.faces, start=1):
        dx, dy = s_next.x - s.x, s.y - s_next.y
        r = gcd(dx, dy)
        step = (dx // r, -(dy // r))
        normal = LatticePoint(dy // r, dx // r)
        h = tuple(f.coeff(s.x + k * step[0], s.y + k * step[1]) for k in range(r + 1))
        rays.append(TropicalRay(i, normal, r, normal.dot(s), h))
    return tuple(rays)


# -- univariate helpers over Q (coefficients constant term first) -------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a, b):
    a, b = _trim(a), _trim(b)
    while len(a) >= len(b) and a:
        q = Fraction(a[-1]) / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = _trim(a)
    return a


def univariate_gcd(a, b) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def is_squarefree(h) -> bool:
    h = _trim(h)
    dh = [k * c for k, c in enumerate(h)][1:]
    return len(univariate_gcd(h, dh)) <= 1


def format_univariate(h, var: str = "T") -> str:
    out = str(SparsePoly({(k, 0): c for k, c in enumerate(h)}))
    return out.replace("x", var)


def validate(f: SparsePoly) -> CurveData:
    """Accept ``f`` iff it defines a Newton non-degenerate curve singular at 0."""
    polygon = newton_polygon(f)
    for a, b in f.support():
        if a + b < 2:
            raise ValidationError(
                "smooth",
                f"support point ({a},{b}) has total degree {a + b} (smooth at origin)",
                (a, b),
            )
    rays = tropical_rays(f, polygon)
    for r in rays:
        if not is_squarefree(r.face_poly):
            s, s_next = polygon.faces[r.index - 1]
            raise ValidationError(
                "degenerate",
                f"face {r.index} from ({s.x},{s.y}) to ({s_next.x},{s_next.y}): face polynomial "
                f"{format_univariate(r.face_poly)} is not squarefree (Newton degenerate)",
                r.index,
            )
    return CurveData(f, polygon, rays)


def nu_polygon(curve: CurveData, g) -> int:
    a, b = g
    return min(x * a + y * b for x, y in curve.polygon.vertices)


def all_rays_below_diagonal(curve: CurveData) -> bool:
    return all(r.primitive.y < r.primitive.x for r in curve.rays)


def normalize(curve: CurveData) -> CurveData:
    """Swap ``x <-> y`` when every ray lies strictly below the diagonal."""
    if not all_rays_below_diagonal(curve):
        return curve
    return replace(validate(curve.poly.swapped()), swapped=not curve.swapped)


def curve_from_text(text: str) -> CurveData:
    from .poly import parse

    return validate(parse(text))
