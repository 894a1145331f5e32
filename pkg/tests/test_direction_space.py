from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from castability import shapes
from castability.casting import facet_chart, single_fad
from castability.direction_space import (CLOSED_NONNEG, EMPTY_REGION, OPEN_NEG, HalfPlane,
                                         RegionKind, cone_from_region, project_hemisphere)
from castability.errors import ZeroVector
from castability.kernel import Basis, Vec3, dot, orthogonal_basis

ints = st.integers(-20, 20)
vec = st.tuples(ints, ints, ints).filter(lambda v: v != (0, 0, 0))
rat = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def test_pole_projects_to_full_and_antipole_to_empty():
    w = (1, 2, 3)
    chart = orthogonal_basis(w)
    assert project_hemisphere(w, chart).kind == "Full"
    assert project_hemisphere((-1, -2, -3), chart).kind == "Empty"
    # the open complement flips both
    assert project_hemisphere(w, chart, OPEN_NEG).kind == "Empty"
    assert project_hemisphere((-1, -2, -3), chart, OPEN_NEG).kind == "Full"


def test_axis_chart_gives_x_nonneg():
    chart = Basis(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))
    hp = project_hemisphere((1, 0, 0), chart, CLOSED_NONNEG)
    assert (hp.a, hp.b, hp.c, hp.strict) == (1, 0, 0, False)
    with pytest.raises(ZeroVector):
        project_hemisphere((0, 0, 0), chart)
    with pytest.raises(ValueError):
        project_hemisphere((1, 0, 0), chart, "sideways")


@given(vec, vec, rat, rat)
def test_round_trip_lift_satisfies_hemisphere(pole, n, x, y):
    chart = orthogonal_basis(pole)
    hp = project_hemisphere(n, chart)
    d = chart.lift(x, y)
    assert (dot(d, n) >= 0) == hp.contains(x, y)
    assert (dot(d, n) == 0) == (hp.value(x, y) == 0)
    strict = project_hemisphere(n, chart, OPEN_NEG)
    assert strict.contains(x, y) == (dot(d, n) < 0)


@given(vec, vec)
def test_chart_completeness(pole, d):
    chart = orthogonal_basis(pole)
    u, v, w = chart
    s = dot(d, w)
    assume(s != 0)
    # the unique chart point of d (if its pole component is positive)
    x = Fraction(dot(d, u) * dot(w, w), dot(u, u) * s)
    y = Fraction(dot(d, v) * dot(w, w), dot(v, v) * s)
    lifted = chart.lift(x, y)
    ratio = Fraction(dot(w, w), s)
    if s > 0:
        assert lifted == Vec3(*(c * ratio for c in d))
    else:
        # the lift points the opposite way: no representative for d itself
        assert dot(lifted, d) < 0


def test_cube_top_cone_sample_is_straight_up():
    p = shapes.cube()
    for i in range(6):
        cone = single_fad(p, i)
        assert cone.region.kind is RegionKind.POINT
        assert cone.sample_direction == Vec3(*(-c for c in p.normal(i)))


def test_pyramid_base_cone_samples_vertical():
    p = shapes.pyramid()
    cone = single_fad(p, 0)
    assert cone.region.kind is RegionKind.BOUNDED_POLYGON
    assert cone.region.representative() == (0, 0)
    assert cone.sample_direction == Vec3(0, 0, -1)


def test_empty_region_has_no_sample():
    cone = cone_from_region(0, facet_chart(shapes.cube(), 0), EMPTY_REGION)
    assert cone.is_empty and cone.sample_direction is None


def test_halfplane_complement_and_kind():
    hp = HalfPlane(1, -2, 3)
    c = hp.complement()
    assert c.strict and (c.a, c.b, c.c) == (-1, 2, -3)
    for pt in [(0, 0), (1, 2), (-3, 0), (Fraction(1, 2), 2)]:
        assert hp.contains(*pt) != c.contains(*pt)
    assert HalfPlane(0, 0, 0).kind == "Full"
    assert HalfPlane(0, 0, 0, strict=True).kind == "Empty"
