"""Directions as points of a chart plane.

A chart is an exact orthogonal frame ``(u, v, w)``.  The chart point
``(x, y)`` stands for the direction ``x*u + y*v + w``; this is the central
projection of the open hemisphere around ``w`` onto its tangent plane.  A
hemisphere ``{d : d . n >= 0}`` becomes the half-plane
``(n.u) x + (n.v) y + (n.w) >= 0``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .kernel import Basis, Scalar, Vec3, dot, primitive, _require_nonzero

CLOSED_NONNEG = "closed_nonneg"
OPEN_NEG = "open_neg"

Point2 = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class HalfPlane:
    """The constraint ``a*x + b*y + c >= 0`` (``> 0`` when ``strict``)."""

    a: Scalar
    b: Scalar
    c: Scalar
    strict: bool = False
    source: Optional[int] = field(default=None, compare=False)

    @property
    def kind(self) -> str:
        if self.a != 0 or self.b != 0:
            return "Proper"
        if self.strict:
            return "Full" if self.c > 0 else "Empty"
        return "Full" if self.c >= 0 else "Empty"

    def value(self, x, y):
        return self.a * x + self.b * y + self.c

    def contains(self, x, y) -> bool:
        v = self.value(x, y)
        return v > 0 if self.strict else v >= 0

    def complement(self) -> "HalfPlane":
        return HalfPlane(-self.a, -self.b, -self.c, not self.strict, self.source)


class RegionKind(str, enum.Enum):
    EMPTY = "Empty"
    POINT = "Point"
    SEGMENT = "Segment"
    RAY = "Ray"
    LINE = "Line"
    HALF_PLANE = "HalfPlaneRegion"
    STRIP = "Strip"
    BOUNDED_POLYGON = "BoundedPolygon"
    UNBOUNDED_POLYGON = "UnboundedPolygon"
    FULL_PLANE = "FullPlane"

    def __str__(self) -> str:
        return self.value


_DIM = {
    RegionKind.EMPTY: -1, RegionKind.POINT: 0, RegionKind.SEGMENT: 1, RegionKind.RAY: 1,
    RegionKind.LINE: 1,
}


def _canon_dir(d) -> tuple[int, int]:
    p = primitive((d[0], d[1], 0))
    return (p.x, p.y)


@dataclass(frozen=True)
class ConvexRegion:
    """Exact convex region of a chart plane, possibly degenerate.

    The region equals ``conv(points) + cone(rays)``.  ``vertices`` are its
    extreme points, counter-clockwise for two-dimensional kinds, and
    ``edges`` are the supporting lines of its sides as ``(point, direction)``
    pairs with the region on the left.  ``boundary`` holds the input
    half-planes that support the region.
    """

    kind: RegionKind
    boundary: tuple[HalfPlane, ...] = ()
    vertices: tuple[Point2, ...] = ()
    points: tuple[Point2, ...] = ()
    rays: tuple[Point2, ...] = ()
    edges: tuple[tuple[Point2, Point2], ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.kind is RegionKind.EMPTY

    @property
    def dimension(self) -> int:
        return _DIM.get(self.kind, 2)

    @property
    def is_bounded(self) -> bool:
        return not self.rays

    def representative(self) -> Optional[Point2]:
        """Deterministic relative-interior point: vertex average plus the
        sum of the recession rays."""
        if self.is_empty:
            return None
        k = len(self.points)
        x = sum((Fraction(p[0]) for p in self.points), Fraction(0)) / k
        y = sum((Fraction(p[1]) for p in self.points), Fraction(0)) / k
        for r in self.rays:
            x += r[0]
            y += r[1]
        return (x, y)

    def contains(self, pt) -> bool:
        """Membership from the region's own geometry (not its constraints)."""
        x, y = Fraction(pt[0]), Fraction(pt[1])
        kind = self.kind
        if kind is RegionKind.EMPTY:
            return False
        if kind is RegionKind.FULL_PLANE:
            return True
        if kind is RegionKind.POINT:
            return (x, y) == tuple(self.points[0])
        if kind in (RegionKind.SEGMENT, RegionKind.RAY, RegionKind.LINE):
            p = self.points[0]
            d = (self.points[1][0] - p[0], self.points[1][1] - p[1]) if kind is RegionKind.SEGMENT \
                else self.rays[0]
            rx, ry = x - p[0], y - p[1]
            if d[0] * ry - d[1] * rx != 0:
                return False
            if kind is RegionKind.LINE:
                return True
            t = rx * d[0] + ry * d[1]
            if t < 0:
                return False
            return kind is RegionKind.RAY or t <= d[0] * d[0] + d[1] * d[1]
        for (px, py), (dx, dy) in self.edges:
            if dx * (y - py) - dy * (x - px) < 0:
                return False
        return True

    def signature(self):
        """Hashable summary used to compare regions computed two ways."""
        return (self.kind, frozenset(self.vertices), frozenset(_canon_dir(r) for r in self.rays))

    def sample(self, rng: random.Random, count: int) -> list[Point2]:
        """Random exact points of the region (convex/conic combinations)."""
        if self.is_empty:
            return []
        out = []
        for _ in range(count):
            w = [rng.randint(0, 1000) for _ in self.points]
            if sum(w) == 0:
                w[0] = 1
            tot = sum(w)
            x = sum((Fraction(wi * p[0]) for wi, p in zip(w, self.points)), Fraction(0)) / tot
            y = sum((Fraction(wi * p[1]) for wi, p in zip(w, self.points)), Fraction(0)) / tot
            for r in self.rays:
                s = Fraction(rng.randint(0, 1000), rng.randint(1, 100))
                x += s * r[0]
                y += s * r[1]
            out.append((x, y))
        return out


EMPTY_REGION = ConvexRegion(RegionKind.EMPTY)


@dataclass(frozen=True)
class DirectionCone:
    """All valid pull-out directions of one top facet, in its chart.

    The chart pole ``w`` is the outward normal of the facet, so every chart
    point lifts to a direction leaving through that facet.
    """

    top_facet: int
    chart: Basis
    region: ConvexRegion
    sample_direction: Optional[Vec3] = None

    @property
    def is_empty(self) -> bool:
        return self.region.is_empty

    def lift(self, pt) -> Vec3:
        return self.chart.lift(pt[0], pt[1])

    def generators(self) -> tuple[list[Vec3], list[Vec3]]:
        """3D cone: lifted region points and lifted recession directions."""
        pts = [self.lift(p) for p in self.region.points]
        rays = [self.chart.lift(r[0], r[1], 0) for r in self.region.rays]
        return pts, rays


def project_hemisphere(normal, chart: Basis, sense: str = CLOSED_NONNEG) -> HalfPlane:
    """Chart image of ``{d : d.normal >= 0}`` or of the open ``{d : d.normal < 0}``."""
    _require_nonzero(normal)
    a, b, c = dot(normal, chart.u), dot(normal, chart.v), dot(normal, chart.w)
    if sense == CLOSED_NONNEG:
        return HalfPlane(a, b, c, False)
    if sense == OPEN_NEG:
        return HalfPlane(-a, -b, -c, True)
    raise ValueError(f"unknown sense {sense!r}")


def chart_coefficients(normals: Sequence, chart: Basis) -> list[tuple]:
    """Fast path of :func:`project_hemisphere` for many closed hemispheres."""
    (ux, uy, uz), (vx, vy, vz), (wx, wy, wz) = chart
    return [(nx * ux + ny * uy + nz * uz, nx * vx + ny * vy + nz * vz, nx * wx + ny * wy + nz * wz)
            for nx, ny, nz in normals]


def cone_from_region(top: int, chart: Basis, region: ConvexRegion) -> DirectionCone:
    rep = region.representative()
    sample = None if rep is None else primitive(chart.lift(rep[0], rep[1]))
    return DirectionCone(top, chart, region, sample)
