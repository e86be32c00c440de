"""Embedded topological type of a Newton non-degenerate plane curve.

For such a curve every branch is tropically a single ray ``(p, q)``, and the
intersection multiplicity of two branches only depends on their rays:
``p * q`` on a common ray, ``min(p_i q_j, p_j q_i)`` otherwise.  The multiset
of rays with branch counts therefore carries the full invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .polygon import CurveData

Branch = tuple[int, int, int]  # (p, q, copy index on that ray)


def intersection_number(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Intersection multiplicity of two branches with tropical rays ``a`` and ``b``."""
    if tuple(a) == tuple(b):
        return a[0] * a[1]
    return min(a[0] * b[1], a[1] * b[0])


@dataclass(frozen=True)
class TopoInvariant:
    rays: tuple[tuple[tuple[int, int], int], ...]  # sorted ((p, q), r)

    @property
    def branches(self) -> tuple[Branch, ...]:
        return tuple((p, q, j) for (p, q), r in self.rays for j in range(1, r + 1))

    @property
    def branch_count(self) -> int:
        return sum(r for _, r in self.rays)

    @property
    def intersections(self) -> dict[tuple[Branch, Branch], int]:
        return {
            (b1, b2): intersection_number(b1[:2], b2[:2])
            for b1, b2 in combinations(self.branches, 2)
        }

    def reflected(self) -> "TopoInvariant":
        """The invariant after exchanging ``x`` and ``y``."""
        return TopoInvariant(tuple(sorted(((q, p), r) for (p, q), r in self.rays)))

    def canonical(self) -> "TopoInvariant":
        """Representative of the class under the coordinate swap."""
        return min(self, self.reflected(), key=lambda inv: inv.rays)

    def to_json(self) -> dict:
        return {
            "rays": [{"primitive": [p, q], "branch_count": r} for (p, q), r in self.rays],
            "branches": [list(b) for b in self.branches],
            "intersections": [
                {"pair": [list(b1), list(b2)], "number": n}
                for (b1, b2), n in self.intersections.items()
            ],
        }

    def __str__(self) -> str:
        lines = [f"{self.branch_count} branch(es)"]
        for (p, q), r in self.rays:
            lines.append(f"  ray ({p},{q}) x{r}")
        for (b1, b2), n in self.intersections.items():
            lines.append(f"  ({b1[0]},{b1[1]})#{b1[2]} . ({b2[0]},{b2[1]})#{b2[2]} = {n}")
        return "\n".join(lines)


def invariant(curve: CurveData) -> TopoInvariant:
    return TopoInvariant(tuple(sorted((tuple(r.primitive), r.branch_count) for r in curve.rays)))


def same_topological_type(c1: CurveData, c2: CurveData) -> bool:
    """Equal invariants, allowing the coordinate swap ``x <-> y``."""
    return invariant(c1).canonical() == invariant(c2).canonical()
