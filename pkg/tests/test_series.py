from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonjet.corpus import CORPUS
from newtonjet.polygon import curve_from_text, validate
from newtonjet.series import (
    BivarPoly,
    BivarRational,
    Factor,
    cyclotomic,
    enumerate_series,
    one_minus_factors,
    poles,
    product_form_cone_pieces,
    ray_monomial,
    series_G,
    series_H,
    series_R,
    truncate,
)

from strategies import curves


def mono(a, b, c=1):
    return BivarRational.monomial(a, b, c)


def geo(a, b):
    return BivarRational.geometric(a, b)


def ray_term(a, b):
    return mono(a, b) * geo(a, b)


DIAG_PLUS = BivarRational.make(BivarPoly({(0, 0): 1}), {Factor((1, 1), 2): 1})  # 1/(1+uv)


# -- arithmetic ----------------------------------------------------------------

def test_cyclotomic_values():
    assert cyclotomic(1) == (1, -1)
    assert cyclotomic(2) == (1, 1)
    assert cyclotomic(4) == (1, 0, 1)
    assert cyclotomic(6) == (1, -1, 1)
    assert len(cyclotomic(8)) == 5


def test_one_minus_splits_into_cyclotomic_pieces():
    assert one_minus_factors(2, 2) == {Factor((1, 1), 1): 1, Factor((1, 1), 2): 1}
    assert one_minus_factors(5, 12) == {Factor((5, 12), 1): 1}
    with pytest.raises(ValueError):
        one_minus_factors(0, 0)


def test_exact_division():
    uv = BivarPoly.monomial(1, 1)
    f = (1 - uv) * (1 + uv) * BivarPoly.monomial(2, 0, 3)
    q, r = f.divmod(1 - uv)
    assert r.is_zero() and q == (1 + uv) * BivarPoly.monomial(2, 0, 3)
    _, r = (1 + uv).divmod(1 - uv)
    assert not r.is_zero()


def test_reduction_cancels_common_factors():
    r = BivarRational.make(1 - BivarPoly.monomial(2, 2), one_minus_factors(1, 1))
    assert r.reduced().denominator == ()
    assert r.reduced().numerator == 1 + BivarPoly.monomial(1, 1)


def test_geometric_truncation():
    assert str(truncate(geo(1, 1), 3)) == "1 + u*v + u^2*v^2 + u^3*v^3"


def test_truncation_at_zero_is_the_constant_term():
    r = (mono(0, 0, 7) + mono(2, 3)) * geo(1, 1)
    assert truncate(r, 0) == BivarPoly({(0, 0): 7})


def test_truncation_needs_a_v_power():
    with pytest.raises(ValueError, match="no expansion in powers of v"):
        truncate(geo(1, 0), 3)


def test_rendering():
    assert str(ray_term(5, 12)) == "u^5*v^12/((1 - u^5*v^12))"
    r = mono(3, 2, 2) * geo(1, 1) * geo(2, 2)
    assert r.denominator_text() == "(1 - u*v)*(1 - u^2*v^2)"
    assert (mono(0, 0) * DIAG_PLUS).denominator_text() == "(1 + u*v)"


rationals = st.builds(
    lambda num, dens: BivarRational.make(BivarPoly(num), _den(dens)),
    st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-3, 3),
                    max_size=4),
    st.lists(st.tuples(st.integers(0, 3), st.integers(1, 4)), max_size=3),
)


def _den(pairs):
    from collections import Counter
    out = Counter()
    for a, b in pairs:
        out.update(one_minus_factors(a, b))
    return out


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, rationals)
def test_field_identities(a, b, c):
    assert (a + b) - b == a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, st.integers(0, 12))
def test_truncation_is_a_ring_map(a, b, M):
    assert truncate(a + b, M) == truncate(a, M) + truncate(b, M)
    assert truncate(a * b, M) == (truncate(a, M) * truncate(b, M)).truncate_v(M)


# -- closed forms ----------------------------------------------------------------

EX81 = curve_from_text("(y^2-x^3)(y^2-2x^3)")
EX82 = curve_from_text("(y^2-x^3)(y^3-x^5)")
CUSP = curve_from_text("y^2-x^3")
LINES = curve_from_text("(y-x)(y-2x)")


def test_R_examples():
    assert series_R(EX81) == mono(1, 0, 2) * geo(1, 1) * ray_term(5, 12)
    assert series_R(EX82) == mono(1, 0) * geo(1, 1) * (ray_term(5, 15) + ray_term(8, 24))
    assert series_R(CUSP) == mono(1, 0) * geo(1, 1) * ray_term(5, 6)


def test_H_two_cusps_on_one_ray():
    expected = ray_term(5, 12) + (mono(2, 4) + mono(4, 8) + mono(3, 6)) * geo(5, 12)
    assert series_H(EX81) == expected


def test_H_two_rays():
    middle = ray_term(5, 15) * ray_term(8, 24)
    boundary = (mono(2, 5) + mono(4, 10)) * geo(5, 15) + (mono(3, 8) + mono(6, 16)) * geo(8, 24)
    assert series_H(EX82) == middle + ray_term(5, 15) + ray_term(8, 24) + boundary


def test_H_two_lines():
    assert series_H(LINES) == ray_term(2, 2)


def test_G_two_lines_partial_fractions():
    R = mono(3, 2, 2) * geo(1, 1) * geo(1, 1) * DIAG_PLUS
    assert series_G(LINES) == ray_term(2, 2) + R
    half = mono(0, 0, Fraction(1, 2))
    assert series_G(LINES) == -1 + half * geo(1, 1) + half * DIAG_PLUS + R


def test_cusp_truncation():
    expected = "u^2*v^2 + u^3*v^3 + u^4*v^4 + u^5*v^6 + u^6*v^6 + u^7*v^7 + u^7*v^8 + u^8*v^8"
    assert str(truncate(series_G(CUSP), 8)) == expected
    assert str(enumerate_series(CUSP, 8)) == expected


def test_enumeration_examples():
    assert enumerate_series(EX81, 4) == BivarPoly.monomial(2, 4)
    assert enumerate_series(CUSP, 1).is_zero()
    with pytest.raises(ValueError):
        enumerate_series(CUSP, 0)


def test_product_form_is_flagged_and_only_right_when_unimodular():
    (piece,) = product_form_cone_pieces(EX82)
    assert piece.note == "unimodular-only"
    (piece,) = product_form_cone_pieces(curve_from_text("(y-x^3)(y^3-x)"))
    assert "differs" in piece.note


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_closed_form_matches_enumeration(entry):
    C = entry.curve()
    assert truncate(series_G(C), 40) == enumerate_series(C, 40)


@settings(max_examples=40, deadline=None)
@given(curves())
def test_closed_form_matches_enumeration_on_random_curves(C):
    assert truncate(series_G(C), 30) == enumerate_series(C, 30)


@settings(max_examples=40, deadline=None)
@given(curves())
def test_no_contact_at_order_one(C):
    G = truncate(series_G(C), 1)
    assert all(b != 1 for a, b in G.terms)


@settings(max_examples=40, deadline=None)
@given(curves())
def test_G_is_symmetric_under_coordinate_swap(C):
    assert series_G(C) == series_G(validate(C.poly.swapped()))


@settings(max_examples=40, deadline=None)
@given(curves())
def test_ray_exponents(C):
    for r in C.rays:
        assert ray_monomial(C, r.index) == (r.primitive.norm1(), r.nu_on_ray)


# -- poles -------------------------------------------------------------------------

def _families(C):
    rep = poles(C)
    return rep, {f.kind + str(f.ray): f for f in rep.families}


def test_poles_two_cusps_on_one_ray():
    rep, fam = _families(EX81)
    assert [(str(p.factor), p.multiplicity) for p in fam["diagonal0"].factors] == [("(1 - u*v)", 1)]
    ray = fam["ray1"]
    assert ray.delta == 1
    assert [(str(p.factor), p.multiplicity) for p in ray.factors] == [("(1 - u^5*v^12)", 1)]
    assert rep.unexplained == ()


def test_poles_two_rays():
    rep, fam = _families(EX82)
    assert fam["ray1"].delta == 5 and fam["ray2"].delta == 8
    assert {p.factor.order for p in fam["ray1"].factors} == {1, 5}
    assert {p.factor.order for p in fam["ray2"].factors} == {1, 2, 4, 8}
    assert rep.unexplained == ()


def test_poles_two_lines():
    rep, _ = _families(LINES)
    assert rep.multiplicity(Factor((1, 1), 1)) == 2
    assert rep.multiplicity(Factor((1, 1), 2)) == 1


@settings(max_examples=30, deadline=None)
@given(curves())
def test_pole_certificates(C):
    rep = poles(C)
    den = rep.series.denominator_poly()
    assert rep.unexplained == ()
    for fam in rep.families:
        for pf in fam.factors:
            assert pf.certified
            _, r = den.divmod(pf.factor.poly() ** pf.multiplicity)
            assert r.is_zero()
            _, r = rep.series.numerator.divmod(pf.factor.poly())
            assert not r.is_zero()
        if fam.kind == "ray":
            a, b = fam.exponent
            assert a % fam.delta == 0 and b % fam.delta == 0


@settings(max_examples=30, deadline=None)
@given(curves())
def test_diagonal_is_a_pole_of_order_one_off_the_diagonal(C):
    if any(r.primitive == (1, 1) for r in C.rays) or C.poly.coeff(1, 1) != 0:
        return
    assert poles(C).multiplicity(Factor((1, 1), 1)) == 1
