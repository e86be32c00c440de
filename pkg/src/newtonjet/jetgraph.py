"""Irreducible components of the jet schemes over the origin and their graph.

Two independent routes produce the leveled graph:

* ``build_graph`` works level by level from the frontier sets ``B*_m`` and the
  on-ray sets ``A_m(i)``;
* ``jsc_walk`` + ``expand_jsc`` generate the staircase representation with the
  walk rules and then interpolate the levels.

Both are compared in the test suite.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .lattice import E1, E2, ONE, LatticePoint, det
from .polygon import CurveData, nu_polygon

HYPERPLANE = "H"
INFINITE = "F"


@dataclass(frozen=True, order=True)
class JetComponent:
    """``H^point_level`` or the infinite component of branch ``(ray, branch)``
    over the on-ray point ``point``."""

    level: int
    kind: str
    point: LatticePoint
    ray: int = 0
    branch: int = 0

    def label(self) -> str:
        x, y = self.point
        if self.kind == HYPERPLANE:
            return f"H({x},{y})@{self.level}"
        return f"F({x},{y};{self.ray}.{self.branch})@{self.level}"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "level": self.level, "point": list(self.point)}
        if self.kind == INFINITE:
            out.update(ray=self.ray, branch=self.branch)
        return out


@dataclass(frozen=True)
class ComponentWeight:
    d: int
    e: int

    def __iter__(self):
        yield self.d
        yield self.e


def codim(curve: CurveData, comp: JetComponent) -> int:
    if comp.kind == HYPERPLANE:
        return comp.point.norm1()
    return comp.point.norm1() + 1 + comp.level - nu_polygon(curve, comp.point)


def weight(curve: CurveData, comp: JetComponent) -> ComponentWeight:
    ambient = 2 * (comp.level + 1)
    d = ambient - codim(curve, comp)
    if comp.kind == HYPERPLANE:
        return ComponentWeight(d, d)
    # only e >= ambient - |alpha| is proven; equality holds on every curve checked
    return ComponentWeight(d, ambient - comp.point.norm1())


# ---------------------------------------------------------------------------
# frontier sets

def _least_row(curve: CurveData, x: int, m: int) -> int | None:
    """Least ``y`` in ``[1, m + 1]`` with ``nu(x, y) > m``; ``None`` if none."""
    y = 1
    for vx, vy in curve.polygon.vertices:
        rest = m - vx * x
        if rest < 0:
            continue
        if vy == 0:
            return None
        y = max(y, rest // vy + 1)
    return y if y <= m + 1 else None


def frontier(curve: CurveData, m: int) -> frozenset[LatticePoint]:
    """``B_m``: minimal ``g >= (1, 1)`` with ``nu_g(f) > m``.

    Every column ``x >= m + 1`` has the same least row as column ``m + 1``
    (all vertices but the one on the y-axis already give ``> m``), so the scan
    stops there.
    """
    if m < 0:
        raise ValueError("level must be nonnegative")
    out = []
    prev = None
    for x in range(1, m + 2):
        y = _least_row(curve, x, m)
        if y is not None and (prev is None or y < prev):
            out.append(LatticePoint(x, y))
            prev = y
    return frozenset(out)


def _extreme_rays(curve: CurveData):
    rays = curve.rays
    return {rays[0].index: rays[0], rays[-1].index: rays[-1]}


def removed_points(curve: CurveData, m: int) -> frozenset[LatticePoint]:
    prev = frontier(curve, m - 1)
    out = set()
    for r in _extreme_rays(curve).values():
        for a in prev:
            if det(r.primitive, a) == 0 and nu_polygon(curve, a) == m:
                out.add(a + ONE)
    return frozenset(out)


def reduced_frontier(curve: CurveData, m: int) -> frozenset[LatticePoint]:
    """``B*_m``: ``B_m`` without ``a + (1, 1)`` for extreme-ray ``a`` in ``B_{m-1}``
    with ``nu_a(f) = m``."""
    if m < 1:
        raise ValueError("reduced frontier needs m >= 1")
    return frontier(curve, m) - removed_points(curve, m)


def on_ray_points(curve: CurveData, ray_index: int, m: int) -> list[LatticePoint]:
    """``A_m(i)``: positive multiples of ray ``i`` with ``nu <= m``."""
    r = curve.rays[ray_index - 1]
    return [r.primitive.scale(s) for s in range(1, m // r.nu_on_ray + 1)]


def components(curve: CurveData, m: int) -> list[tuple[JetComponent, ComponentWeight]]:
    if m < 1:
        raise ValueError("components are listed from level 1")
    comps = [JetComponent(m, HYPERPLANE, g) for g in reduced_frontier(curve, m)]
    for r in curve.rays:
        for a in on_ray_points(curve, r.index, m):
            comps.extend(
                JetComponent(m, INFINITE, a, r.index, j) for j in range(1, r.branch_count + 1)
            )
    comps.sort()
    return [(c, weight(curve, c)) for c in comps]


def link_levels(lower, upper, birth) -> list[tuple[JetComponent, JetComponent]]:
    """Truncation edges between consecutive levels.

    ``birth(c)`` is the level at which an infinite component's chain starts,
    i.e. ``nu_a(f)`` for its point ``a``.
    """
    edges = []
    lower_h = [c for c in lower if c.kind == HYPERPLANE]
    lower_f = [c for c in lower if c.kind == INFINITE]
    for child in upper:
        if child.kind == HYPERPLANE:
            for par in lower_h:
                if par.point.leq(child.point):
                    edges.append((child, par))
            for par in lower_f:
                if birth(par) == par.level and child.point == par.point + ONE:
                    edges.append((child, par))
        else:
            if birth(child) == child.level:
                for par in lower_h:
                    if par.point == child.point:
                        edges.append((child, par))
            else:
                for par in lower_f:
                    if (par.point, par.ray, par.branch) == (child.point, child.ray, child.branch):
                        edges.append((child, par))
    return sorted(edges)


def edges(curve: CurveData, m: int) -> list[tuple[JetComponent, JetComponent]]:
    """Edges from level ``m + 1`` down to level ``m``."""
    lower = [c for c, _ in components(curve, m)]
    upper = [c for c, _ in components(curve, m + 1)]
    return link_levels(lower, upper, lambda c: nu_polygon(curve, c.point))


@dataclass
class JetGraph:
    levels: dict[int, list[tuple[JetComponent, ComponentWeight]]] = field(default_factory=dict)
    edges: list[tuple[JetComponent, JetComponent]] = field(default_factory=list)

    @property
    def max_level(self) -> int:
        return max(self.levels, default=0)

    def weight_table(self) -> dict[int, list[tuple[int, int]]]:
        return {m: sorted(tuple(w) for _, w in comps) for m, comps in sorted(self.levels.items())}

    def to_json(self) -> dict:
        return {
            "levels": {
                str(m): [dict(c.to_json(), d=w.d, e=w.e) for c, w in sorted(comps)]
                for m, comps in sorted(self.levels.items())
            },
            "edges": [[c.label(), p.label()] for c, p in sorted(self.edges)],
        }

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def build_graph(curve: CurveData, max_level: int) -> JetGraph:
    g = JetGraph()
    for m in range(1, max_level + 1):
        g.levels[m] = components(curve, m)
    for m in range(1, max_level):
        g.edges.extend(
            link_levels(
                [c for c, _ in g.levels[m]],
                [c for c, _ in g.levels[m + 1]],
                lambda c: nu_polygon(curve, c.point),
            )
        )
    return g


# ---------------------------------------------------------------------------
# generating-series side

def hyperplane_contributors(curve: CurveData, bound: int) -> list[LatticePoint]:
    """Points ``b`` with ``nu_b(f) <= bound`` whose every strictly smaller
    ``g >= (1, 1)`` has ``nu_g(f) < nu_b(f)``.

    This coincides with ``b in B*_{nu_b - 1}``: the removal that turns ``B`` into
    ``B*`` only hits ``a + (1, 1)`` at level ``nu_a``, while
    ``nu_{a+(1,1)} >= nu_a + 2`` for a curve singular at the origin.  Only the
    two immediate predecessors need checking because ``nu`` is monotone.  A
    contributor with ``b_x >= 2`` has ``nu_b >= b_x``, so the box ``[1, bound]^2``
    is exhaustive.
    """
    out = []
    for x in range(1, bound + 1):
        for y in range(1, bound + 1):
            b = LatticePoint(x, y)
            n = nu_polygon(curve, b)
            if n > bound:
                continue
            if x >= 2 and nu_polygon(curve, b - E1) >= n:
                continue
            if y >= 2 and nu_polygon(curve, b - E2) >= n:
                continue
            out.append(b)
    return out


# ---------------------------------------------------------------------------
# staircase representation

STEP = "step"
JUMP = "jump"


@dataclass
class StaircaseRepr:
    """Weighted lattice points ``[a, nu_a - 1]``, walk moves and branch arrows."""

    weights: dict[LatticePoint, int] = field(default_factory=dict)
    moves: list[tuple[LatticePoint, LatticePoint, str]] = field(default_factory=list)
    arrows: list[tuple[LatticePoint, int, int]] = field(default_factory=list)  # (point, r_i, i)

    @property
    def points(self) -> frozenset[LatticePoint]:
        return frozenset(self.weights)

    def to_json(self) -> dict:
        return {
            "points": [[x, y, w] for (x, y), w in sorted(self.weights.items())],
            "moves": [[list(a), list(b), k] for a, b, k in sorted(self.moves)],
            "arrows": [[list(a), r, i] for a, r, i in sorted(self.arrows)],
        }


def walk_successors(curve: CurveData, a: LatticePoint) -> tuple[list[tuple[LatticePoint, str]], object]:
    """Moves out of ``a`` and the ray ``a`` lies on (or ``None``).

    Each extreme ray continues with the unit step pointing into the cone
    spanned by the rays; a single ray jumps diagonally to ``a + (1, 1)``.
    """
    rays = curve.rays
    low, high = rays[0].primitive, rays[-1].primitive
    ray = curve.ray_of(a)
    if ray is not None:
        if len(rays) == 1:
            return [(a + ONE, JUMP)], ray
        if ray.index == rays[0].index:
            return [(a + E2, STEP)], ray
        if ray.index == rays[-1].index:
            return [(a + E1, STEP)], ray
        return [(a + E1, STEP), (a + E2, STEP)], ray
    if det(low, a) < 0:
        return [(a + E2, STEP)], None
    if det(high, a) > 0:
        return [(a + E1, STEP)], None
    return [(a + E1, STEP), (a + E2, STEP)], None


def jsc_walk(curve: CurveData, bound: int) -> StaircaseRepr:
    """Walk from ``(1, 1)`` covering every point born at a level ``<= bound``.

    A point is expanded only when its weight ``nu - 1`` is below ``bound``.  A
    child that also has an unexpanded parent is born past ``bound`` and is
    dropped.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rep = StaircaseRepr()
    queue = deque([ONE])
    rep.weights[ONE] = nu_polygon(curve, ONE) - 1
    frozen = []
    while queue:
        a = queue.popleft()
        n = rep.weights[a] + 1
        moves, ray = walk_successors(curve, a)
        if ray is not None and n <= bound:
            rep.arrows.append((a, ray.branch_count, ray.index))
        if n > bound:
            frozen.append(a)
            continue
        for b, kind in moves:
            if kind == JUMP and n + 1 > bound:
                continue
            rep.moves.append((a, b, kind))
            if b not in rep.weights:
                rep.weights[b] = nu_polygon(curve, b) - 1
                queue.append(b)
    late = set()
    for a in frozen:
        for b, _ in walk_successors(curve, a)[0]:
            if b in rep.weights:
                late.add(b)
    for b in late:
        del rep.weights[b]
    rep.moves = [mv for mv in rep.moves if mv[1] not in late]
    return rep


def expand_jsc(rep: StaircaseRepr, bound: int) -> JetGraph:
    """Leveled graph from a staircase representation alone.

    A point with weight ``w`` is alive from its birth level up to ``w``; its
    birth is one past the largest parent weight (two past for a diagonal jump
    off a ray, whose ``a + (1, 1)`` is swallowed at level ``nu_a``).  Each arrow
    becomes one infinite chain starting at level ``w + 1`` of its point.
    """
    birth: dict[LatticePoint, int] = {ONE: 1}
    for a, b, kind in rep.moves:
        start = rep.weights[a] + (2 if kind == JUMP else 1)
        birth[b] = max(birth.get(b, 0), start)

    chain_start = {}
    levels: dict[int, list[JetComponent]] = {m: [] for m in range(1, bound + 1)}
    for a, w in rep.weights.items():
        for m in range(birth[a], min(w, bound) + 1):
            levels[m].append(JetComponent(m, HYPERPLANE, a))
    for a, r, i in rep.arrows:
        start = rep.weights[a] + 1
        for j in range(1, r + 1):
            for m in range(start, bound + 1):
                c = JetComponent(m, INFINITE, a, i, j)
                levels[m].append(c)
                chain_start[(a, i, j)] = start

    graph = JetGraph()
    for m in range(1, bound + 1):
        comps = sorted(levels[m])
        graph.levels[m] = [(c, _weight_from_repr(c, rep)) for c in comps]

    def born(c):
        return chain_start[(c.point, c.ray, c.branch)]

    for m in range(1, bound):
        graph.edges.extend(link_levels(sorted(levels[m]), sorted(levels[m + 1]), born))
    return graph


def _weight_from_repr(c: JetComponent, rep: StaircaseRepr) -> ComponentWeight:
    ambient = 2 * (c.level + 1)
    if c.kind == HYPERPLANE:
        d = ambient - c.point.norm1()
        return ComponentWeight(d, d)
    nu_a = rep.weights[c.point] + 1
    d = ambient - (c.point.norm1() + 1 + c.level - nu_a)
    return ComponentWeight(d, ambient - c.point.norm1())
