from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from castability.errors import ZeroVector
from castability.kernel import (Vec3, as_scalar, cross, dot, fraction_str, orthogonal_basis,
                                primitive, rotation_to_top)

ints = st.integers(-50, 50)
vec = st.tuples(ints, ints, ints).filter(lambda v: v != (0, 0, 0))


def test_as_scalar_parses_decimal_strings_exactly():
    assert as_scalar("0.1") == Fraction(1, 10)
    assert as_scalar("3/4") == Fraction(3, 4)
    assert as_scalar("7") == 7 and type(as_scalar("7")) is int
    with pytest.raises(TypeError):
        as_scalar(True)
    with pytest.raises(ValueError):
        as_scalar(float("nan"))


def test_primitive_rescales_to_coprime_integers():
    assert primitive((Fraction(1, 2), 0, Fraction(-3, 4))) == Vec3(2, 0, -3)
    assert primitive((4, 6, 8)) == Vec3(2, 3, 4)
    with pytest.raises(ZeroVector):
        primitive((0, 0, 0))


def test_fraction_str():
    assert fraction_str(3) == "3/1"
    assert fraction_str(Fraction(-2, 6)) == "-1/3"


@given(vec)
def test_orthogonal_basis_is_exact_and_right_handed(w):
    u, v, w2 = orthogonal_basis(w)
    assert w2 == w
    assert dot(u, w) == 0 and dot(v, w) == 0 and dot(u, v) == 0
    assert not u.is_zero() and not v.is_zero()
    # u x v is a positive multiple of w
    c = cross(u, v)
    assert c == Vec3(*(dot(u, u) * x for x in w))


def test_orthogonal_basis_rejects_zero():
    with pytest.raises(ZeroVector):
        orthogonal_basis((0, 0, 0))


@given(vec)
def test_rotation_to_top_is_orthonormal_and_maps_normal_down(n):
    r = rotation_to_top(n)
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(r) == pytest.approx(1.0)
    a = np.array(n, dtype=float)
    assert np.allclose(r @ (a / np.linalg.norm(a)), [0, 0, -1], atol=1e-12)


def test_rotation_to_top_special_axes():
    assert np.allclose(rotation_to_top((0, 0, -1)), np.eye(3))
    r = rotation_to_top((0, 0, 1))
    assert np.allclose(r @ [0, 0, 1], [0, 0, -1])
