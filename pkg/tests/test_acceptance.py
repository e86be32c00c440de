"""Acceptance gate: one test per criterion, each at its stated tolerance.

Under pytest the conftest hook prints a PASS/FAIL line per criterion at the
end of the run.  ``python3 tests/test_acceptance.py`` runs the same checks
without pytest and prints the same lines.
"""

import contextlib
import io
import json
import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from newtonjet.cli import main
from newtonjet.corpus import CORPUS, random_curve
from newtonjet.jetgraph import (
    build_graph,
    codim,
    components,
    expand_jsc,
    frontier,
    jsc_walk,
    reduced_frontier,
)
from newtonjet.lattice import det, sc_continued_fraction
from newtonjet.poly import initial_form, jet_expand, lift_to_jets, nu
from newtonjet.polygon import curve_from_text, validate
from newtonjet.series import (
    BivarPoly,
    BivarRational,
    Factor,
    enumerate_series,
    poles,
    series_G,
    truncate,
)
from newtonjet.topo import invariant, same_topological_type

GOLDEN = Path(__file__).parent / "golden"
EX81 = "(y^2 - x^3)*(y^2 - 2*x^3)"
EX82 = "(y^2 - x^3)*(y^3 - x^5)"
LINES = "(y - x)*(y - 2*x)"


def _mono(a, b, c=1):
    return BivarRational.monomial(a, b, c)


def _geo(a, b):
    return BivarRational.geometric(a, b)


def _cli(*argv) -> str:
    with contextlib.redirect_stdout(io.StringIO()) as out:
        assert main(list(argv)) == 0
    return out.getvalue()


def _max_nu(curve):
    return max(r.nu_on_ray for r in curve.rays)


# -- 1 ---------------------------------------------------------------------------

@pytest.mark.acceptance(1, "staircase walk and digit identities")
def test_criterion_1_staircase():
    assert _cli("walk", "2", "3") == "(1,1),(1,2),(2,2),(2,3)\n"
    start = time.perf_counter()
    rng = random.Random(31)
    pairs = set()
    while len(pairs) < 200:
        q = rng.randint(2, 500)
        p = rng.randint(1, q - 1)
        if _coprime(p, q):
            pairs.add((p, q))
    for p, q in sorted(pairs):
        sc = sc_continued_fraction(p, q)
        r = sc.remainders
        assert len(sc.digits) == p and sum(sc.digits) == q
        assert all(r[k] > 0 for k in range(p - 1)) and r[p - 1] == 0
        D = sc.partial_sums()
        for k in range(1, p):
            rk = r[k - 1]
            assert det((k, D[k - 1]), (p, q)) == rk > 0
            assert det((p, q), (k, D[k - 1] + 1)) == p - rk > 0
            assert det((k + 1, D[k - 1] + 1), (p, q)) == q - p + rk > 0
        assert det((p, D[-1]), (p, q)) == 0
    assert time.perf_counter() - start < 1.0


def _coprime(p, q):
    from math import gcd
    return gcd(p, q) == 1


# -- 2 ---------------------------------------------------------------------------

@pytest.mark.acceptance(2, "cusp jet graph against the golden file")
def test_criterion_2_cusp_graph():
    golden = json.loads((GOLDEN / "cusp_graph.json").read_text())
    g = build_graph(curve_from_text("y^2 - x^3"), 8)
    assert g.to_json() == golden["graph"]
    assert g.weight_table() == {
        1: [(2, 2)], 2: [(3, 3)], 3: [(4, 4)], 4: [(5, 5)], 5: [(7, 7)], 6: [(8, 9)],
        7: [(9, 9), (9, 11)], 8: [(10, 10), (10, 13)],
    }
    assert json.loads(_cli("graph", "y^2-x^3", "--max-level", "8", "--format", "json")) == golden


# -- 3 ---------------------------------------------------------------------------

@pytest.mark.acceptance(3, "walk representation equals the frontier definition on the corpus")
def test_criterion_3_oracle_equivalence():
    assert len(CORPUS) == 12
    for entry in CORPUS:
        C = entry.curve()
        assert build_graph(C, 40).canonical() == expand_jsc(jsc_walk(C, 40), 40).canonical(), entry.name


# -- 4 ---------------------------------------------------------------------------

@pytest.mark.acceptance(4, "jet equations vanish below nu and give the initial form at nu")
def test_criterion_4_jet_grounding():
    start = time.perf_counter()
    checked = 0
    for entry in CORPUS:
        C = entry.curve()
        f = C.poly
        for r in C.rays:
            p, q = r.primitive
            k = 1
            while k * r.nu_on_ray <= 14:
                alpha = (k * p, k * q)
                n = nu(f, alpha)
                assert n == k * r.nu_on_ray
                fs = jet_expand(f, n, vanish=alpha)
                assert all(fs[j].is_zero() for j in range(n)), (entry.name, alpha)
                assert fs[n] == lift_to_jets(initial_form(f, alpha), n, *alpha), (entry.name, alpha)
                checked += 1
                k += 1
    assert checked >= 10
    assert time.perf_counter() - start < 30.0


# -- 5 ---------------------------------------------------------------------------

def _ray_term(a, b):
    return _mono(a, b) * _geo(a, b)


def _displayed_G(name):
    if name == EX81:
        H = _ray_term(5, 12) + (_mono(2, 4) + _mono(4, 8) + _mono(3, 6)) * _geo(5, 12)
        R = _mono(1, 0, 2) * _geo(1, 1) * _ray_term(5, 12)
    else:
        H = (
            _ray_term(5, 15) * _ray_term(8, 24)
            + _ray_term(5, 15)
            + _ray_term(8, 24)
            + (_mono(2, 5) + _mono(4, 10)) * _geo(5, 15)
            + (_mono(3, 8) + _mono(6, 16)) * _geo(8, 24)
        )
        R = _mono(1, 0) * _geo(1, 1) * (_ray_term(5, 15) + _ray_term(8, 24))
    return H + R


@pytest.mark.acceptance(5, "closed-form series and truncation to v^60")
@pytest.mark.parametrize("text", [EX81, EX82])
def test_criterion_5_series(text):
    start = time.perf_counter()
    C = curve_from_text(text)
    G = series_G(C)
    assert G == _displayed_G(text)
    assert truncate(G, 60) == enumerate_series(C, 60)
    assert time.perf_counter() - start < 5.0


# -- 6 ---------------------------------------------------------------------------

def _certified(rep):
    den = rep.series.denominator_poly()
    for fam in rep.families:
        for pf in fam.factors:
            assert pf.certified and pf.remainder_terms > 0
            _, r = den.divmod(pf.factor.poly() ** pf.multiplicity)
            assert r.is_zero()
    assert rep.unexplained == ()


@pytest.mark.acceptance(6, "pole families with divisibility certificates")
def test_criterion_6_poles():
    rep = poles(curve_from_text(EX81))
    _certified(rep)
    fams = {(f.kind, f.ray): f for f in rep.families}
    assert [pf.factor for pf in fams["diagonal", 0].factors] == [Factor((1, 1), 1)]
    ray = fams["ray", 1]
    assert ray.delta == 1 and [pf.factor for pf in ray.factors] == [Factor((5, 12), 1)]

    rep = poles(curve_from_text(EX82))
    _certified(rep)
    assert [f.delta for f in rep.families if f.kind == "ray"] == [5, 8]

    rep = poles(curve_from_text(LINES))
    _certified(rep)
    assert rep.multiplicity(Factor((1, 1), 1)) == 2
    assert rep.multiplicity(Factor((1, 1), 2)) == 1
    plus = BivarRational.make(BivarPoly({(0, 0): 1}), {Factor((1, 1), 2): 1})
    half = _mono(0, 0, Fraction(1, 2))
    R = _mono(3, 2, 2) * _geo(1, 1) * _geo(1, 1) * plus
    assert rep.series == -1 + half * _geo(1, 1) + half * plus + R


# -- 7 ---------------------------------------------------------------------------

VARIANTS = (
    "(y^2 - 7*x^3 + x^5*y)*(y^3 - 2*x^5 + x^6)",
    "y^2 - x^3 + x^2*y^2",
    "x^2 - y^3",
    "y^2 - 3*x^4 + x^5",
    "(y - x)*(y + 3*x) + x^3",
    "(y^2 - 5*x^3)*(y^2 + x^3)",
)


@pytest.mark.acceptance(7, "topological type comparisons and graph serialization")
def test_criterion_7_topology():
    assert same_topological_type(curve_from_text(EX82), curve_from_text(VARIANTS[0]))
    assert _cli("compare", EX82, VARIANTS[0]).startswith("same embedded topological type\n")
    assert not same_topological_type(curve_from_text("y^2 - x^3"), curve_from_text("y^2 - x^4"))

    curves = [e.curve() for e in CORPUS] + [curve_from_text(t) for t in VARIANTS]
    cache = {}

    def serial(i, level):
        if (i, level) not in cache:
            cache[i, level] = build_graph(curves[i], level).canonical()
        return cache[i, level]

    equal_pairs = 0
    for i, j in combinations(range(len(curves)), 2):
        level = 3 * max(_max_nu(curves[i]), _max_nu(curves[j]))
        same_inv = invariant(curves[i]) == invariant(curves[j])
        same_graph = serial(i, level) == serial(j, level)
        assert same_inv == same_graph, (i, j)
        equal_pairs += same_inv
    assert equal_pairs >= 5


# -- 8 ---------------------------------------------------------------------------

CASES = 10_000
POOL = 2_000


def _antichain(points):
    pts = list(points)
    return not any(
        a != b and a[0] <= b[0] and a[1] <= b[1] for a in pts for b in pts
    )


@pytest.mark.acceptance(8, "randomized property suite")
def test_criterion_8_properties():
    start = time.perf_counter()
    rng = random.Random(8)
    pool = []
    for _ in range(POOL):
        C = curve_from_text(random_curve(rng))
        S = validate(C.poly.swapped())
        assert series_G(C) == series_G(S)
        assert invariant(S) == invariant(C).reflected()
        assert same_topological_type(C, S)
        pool.append(C)
    for _ in range(CASES):
        C = rng.choice(pool)
        m = rng.randint(1, 3 * _max_nu(C))
        assert _antichain(frontier(C, m)) and _antichain(reduced_frontier(C, m))
        for comp, w in components(C, m):
            assert w.d + codim(C, comp) == 2 * (m + 1)
        ray = rng.choice(C.rays)
        k = rng.randint(1, 20)
        alpha = (k * ray.primitive[0], k * ray.primitive[1])
        if ray.primitive != (1, 1) and C.poly.coeff(1, 1) == 0:
            assert nu(C.poly, alpha) > sum(alpha)
    assert time.perf_counter() - start < 60.0


# -- standalone -----------------------------------------------------------------

def _run_standalone() -> int:
    failed = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_criterion_"):
            continue
        mark = next(m for m in fn.pytestmark if m.name == "acceptance")
        params = [m for m in fn.pytestmark if m.name == "parametrize"]
        argsets = [(v,) for v in params[0].args[1]] if params else [()]
        status = "PASS"
        for args in argsets:
            try:
                fn(*args)
            except AssertionError:
                status = "FAIL"
        failed += status == "FAIL"
        print(f"{status} criterion {mark.args[0]}: {mark.args[1]}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(_run_standalone())
