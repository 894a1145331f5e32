"""Exact scalar and vector arithmetic.

Every predicate in the package runs on Python ``int`` / ``fractions.Fraction``
values, so sign decisions never suffer from rounding.  Floating point appears
only in :func:`rotation_to_top`, which is used for reporting.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Union

import numpy as np

from .errors import ZeroVector

Scalar = Union[int, Fraction]


def as_scalar(value) -> Scalar:
    """Convert ``value`` to an exact rational.

    Strings are parsed exactly, so ``"0.1"`` becomes ``1/10`` rather than the
    nearest binary float.  Floats are accepted but converted exactly from
    their binary value.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_scalar(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        f = Fraction(value.strip())
        return f.numerator if f.denominator == 1 else f
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return as_scalar(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


class Vec3(NamedTuple):
    x: Scalar
    y: Scalar
    z: Scalar

    @classmethod
    def of(cls, x, y, z) -> "Vec3":
        return cls(as_scalar(x), as_scalar(y), as_scalar(z))

    def __add__(self, other):  # type: ignore[override]
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Vec3(-self.x, -self.y, -self.z)

    def scale(self, s: Scalar) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def to_float(self) -> np.ndarray:
        return np.array([float(self.x), float(self.y), float(self.z)])


class Basis(NamedTuple):
    """Mutually orthogonal, unnormalized frame; ``w`` is the chart pole."""

    u: Vec3
    v: Vec3
    w: Vec3

    def lift(self, x: Scalar, y: Scalar, t: Scalar = 1) -> Vec3:
        """Return ``x*u + y*v + t*w``."""
        u, v, w = self
        return Vec3(x * u.x + y * v.x + t * w.x,
                    x * u.y + y * v.y + t * w.y,
                    x * u.z + y * v.z + t * w.z)


ZERO = Vec3(0, 0, 0)
AXES = (Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))


def dot(a, b) -> Scalar:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b) -> Vec3:
    return Vec3(a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0])


def _require_nonzero(v) -> None:
    if v[0] == 0 and v[1] == 0 and v[2] == 0:
        raise ZeroVector("zero vector where a direction is required")


def primitive(v: Iterable[Scalar]) -> Vec3:
    """Positive rescaling of ``v`` to coprime integers.

    Directions are scale invariant, so this loses nothing and keeps later
    arithmetic in plain integers.
    """
    comps = [Fraction(c) for c in v]
    den = math.lcm(*(c.denominator for c in comps))
    ints = [int(c * den) for c in comps]
    g = math.gcd(*ints)
    if g == 0:
        raise ZeroVector("zero vector has no primitive form")
    return Vec3(*(i // g for i in ints))


def orthogonal_basis(pole) -> Basis:
    """Exact orthogonal frame ``(u, v, w)`` with ``w = pole`` and ``u x v ~ w``.

    ``u = pole x e`` for the coordinate axis ``e`` least parallel to the pole
    (smallest absolute component, lowest index on ties) and ``v = pole x u``.
    """
    _require_nonzero(pole)
    w = Vec3(*pole)
    mags = [abs(c) for c in w]
    e = AXES[mags.index(min(mags))]
    u = cross(w, e)
    v = cross(w, u)
    return Basis(u, v, w)


def rotation_to_top(inward_normal) -> np.ndarray:
    """Orthonormal 3x3 matrix sending the unit inward normal to ``(0, 0, -1)``.

    This is the rotation that puts the facet on top of the mold, so a
    direction ``d`` in the original frame becomes ``R @ d``.
    """
    _require_nonzero(inward_normal)
    a = np.array([float(c) for c in inward_normal])
    a /= np.linalg.norm(a)
    b = np.array([0.0, 0.0, -1.0])
    v = np.cross(a, b)
    c = float(a @ b)
    s2 = float(v @ v)
    if s2 < 1e-30:
        if c > 0:
            return np.eye(3)
        # antiparallel: half-turn about an axis orthogonal to both
        return np.diag([1.0, -1.0, -1.0])
    vx = np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])
    r = np.eye(3) + vx + vx @ vx * ((1.0 - c) / s2)
    # one polishing step keeps the orthonormality error near machine epsilon
    u_, _, vt = np.linalg.svd(r)
    return u_ @ vt


def fraction_str(x: Scalar) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"
