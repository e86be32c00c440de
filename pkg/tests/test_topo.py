from hypothesis import given, settings

from newtonjet.polygon import curve_from_text, validate
from newtonjet.topo import intersection_number, invariant, same_topological_type

from strategies import curves


def test_cusp_invariant():
    inv = invariant(curve_from_text("y^2-x^3"))
    assert inv.rays == (((2, 3), 1),)
    assert inv.intersections == {}


def test_two_ray_intersection():
    inv = invariant(curve_from_text("(y^2-x^3)(y^3-x^5)"))
    assert list(inv.intersections.values()) == [9]


def test_same_ray_intersection():
    inv = invariant(curve_from_text("(y-x^2)(y+x^2)"))
    assert inv.rays == (((1, 2), 2),)
    assert list(inv.intersections.values()) == [2]
    assert inv.branch_count == 2


def test_intersection_formula():
    assert intersection_number((2, 3), (2, 3)) == 6
    assert intersection_number((2, 3), (3, 2)) == 4
    assert intersection_number((1, 1), (1, 2)) == 1


def test_same_type_examples():
    c = curve_from_text
    assert same_topological_type(c("y^2-x^3"), c("y^2-x^3+x^4"))
    assert same_topological_type(
        c("(y^2-x^3)(y^3-x^5)"), c("(y^2-7x^3+x^5*y)(y^3-2x^5+x^6)")
    )
    assert not same_topological_type(c("y^2-x^3"), c("y^2-x^4"))


def test_coordinate_swap_gives_the_same_type():
    assert same_topological_type(curve_from_text("y^2-x^3"), curve_from_text("x^2-y^3"))


@settings(max_examples=60, deadline=None)
@given(curves())
def test_invariant_reflects_under_swap(C):
    swapped = validate(C.poly.swapped())
    assert invariant(swapped) == invariant(C).reflected()
    assert same_topological_type(C, swapped)


def test_json_report():
    data = invariant(curve_from_text("(y^2-x^3)(y^3-x^5)")).to_json()
    assert data["rays"] == [
        {"primitive": [2, 3], "branch_count": 1},
        {"primitive": [3, 5], "branch_count": 1},
    ]
    assert data["intersections"][0]["number"] == 9
