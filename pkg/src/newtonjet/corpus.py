"""Reference curves used by the scripts and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .polygon import CurveData, ValidationError, curve_from_text


@dataclass(frozen=True)
class CorpusCurve:
    name: str
    text: str

    def curve(self) -> CurveData:
        return curve_from_text(self.text)


FIXED = (
    CorpusCurve("cusp", "y^2 - x^3"),
    CorpusCurve("two cusps on one ray", "(y^2 - x^3)*(y^2 - 2*x^3)"),
    CorpusCurve("two rays (2,3) and (3,5)", "(y^2 - x^3)*(y^3 - x^5)"),
    CorpusCurve("two transversal cusps", "(y^2 - x^3)*(y^3 - x^2)"),
    CorpusCurve("two lines", "(y - x)*(y - 2*x)"),
    CorpusCurve("tacnode", "y^2 - x^4"),
    CorpusCurve("non-unimodular cone", "(y - x^3)*(y^3 - x)"),
)


def _branch(rng: random.Random, used: set) -> tuple[str, tuple[int, int]]:
    while True:
        a, b = rng.randint(1, 5), rng.randint(1, 7)
        if gcd(a, b) != 1:
            continue
        c = rng.choice([1, 2, 3, 5, 7, -1, -2, -3])
        if (a, b, c) in used:
            continue
        used.add((a, b, c))
        sign = "-" if c > 0 else "+"
        coeff = "" if abs(c) == 1 else f"{abs(c)}*"
        return f"({_mono(0, a)} {sign} {coeff}{_mono(b, 0)})", (a, b)


def _mono(a: int, b: int) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in (("x", a), ("y", b)) if e]
    return "*".join(parts)


def random_curve(rng: random.Random, max_branches: int = 3) -> str:
    """A product of binomial branches plus monomials strictly above the polygon."""
    while True:
        used: set = set()
        parts = [_branch(rng, used) for _ in range(rng.randint(1, max_branches))]
        text = "*".join(p for p, _ in parts)
        try:
            base = curve_from_text(text)
        except ValidationError:
            continue
        extras = []
        for _ in range(rng.randint(0, 3)):
            e = (rng.randint(0, 12), rng.randint(0, 12))
            if all(r.primitive.dot(e) > r.nu_on_ray for r in base.rays):
                c = rng.choice([1, 2, 3, 4, -1, -2, -3, -4])
                coeff = "" if abs(c) == 1 else f"{abs(c)}*"
                extras.append((" - " if c < 0 else " + ") + coeff + _mono(*e))
        text += "".join(extras)
        try:
            curve_from_text(text)
        except ValidationError:
            continue
        return text


def random_corpus(seed: int = 2024, count: int = 5) -> tuple[CorpusCurve, ...]:
    rng = random.Random(seed)
    seen: set[str] = set()
    out = []
    while len(out) < count:
        text = random_curve(rng)
        if text not in seen:
            seen.add(text)
            out.append(CorpusCurve(f"random #{len(out) + 1}", text))
    return tuple(out)


CORPUS = FIXED + random_corpus()
