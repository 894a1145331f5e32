"""Polyhedra used by the tests, the demos and the CLI examples.

Every generator returns a validated, coplanar-merged :class:`Polyhedron`
with exact rational coordinates.  Random generators take an explicit
``random.Random`` so fixtures are reproducible.
"""
from __future__ import annotations

import functools
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .kernel import Vec3
from .mesh import Polyhedron, build_polyhedron, merge_coplanar


def _poly(vertices, faces) -> Polyhedron:
    return merge_coplanar(build_polyhedron(vertices, faces))


def box(a=1, b=1, c=1) -> Polyhedron:
    """Axis-aligned box ``[0,a] x [0,b] x [0,c]``."""
    v = [(x, y, z) for z in (0, c) for y in (0, b) for x in (0, a)]
    faces = [(0, 2, 3, 1), (4, 5, 7, 6), (0, 1, 5, 4), (2, 6, 7, 3), (0, 4, 6, 2), (1, 3, 7, 5)]
    return _poly(v, faces)


def cube(size=1) -> Polyhedron:
    return box(size, size, size)


def parallelepiped(e1=(2, 0, 0), e2=(1, 2, 0), e3=(1, 1, 3)) -> Polyhedron:
    """The parallelepiped spanned by three edge vectors at the origin."""
    e1, e2, e3 = Vec3.of(*e1), Vec3.of(*e2), Vec3.of(*e3)
    v = [Vec3(0, 0, 0) + (e1 if i & 1 else Vec3(0, 0, 0)) + (e2 if i & 2 else Vec3(0, 0, 0))
         + (e3 if i & 4 else Vec3(0, 0, 0)) for i in range(8)]
    faces = [(0, 2, 3, 1), (4, 5, 7, 6), (0, 1, 5, 4), (2, 6, 7, 3), (0, 4, 6, 2), (1, 3, 7, 5)]
    return _poly(v, faces)


def tetrahedron() -> Polyhedron:
    return _poly([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
                 [(0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)])


def pyramid() -> Polyhedron:
    """Square base ``[0,1]^2`` at height 0, apex ``(1/2, 1/2, 1)``."""
    h = Fraction(1, 2)
    v = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (h, h, 1)]
    return _poly(v, [(0, 3, 2, 1), (0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)])


def triangulate(p: Polyhedron) -> tuple[list[Vec3], list[tuple[int, ...]]]:
    """Fan-triangulated soup of a polyhedron with convex facets."""
    faces = []
    for f in p.facets:
        b = f.boundary
        faces += [(b[0], b[t], b[t + 1]) for t in range(1, len(b) - 1)]
    return list(p.vertices), faces


def extrude(profile: Sequence, length=1, axis: int = 2) -> Polyhedron:
    """Prism over a simple polygon ``profile`` (2D, counter-clockwise).

    The profile lies in the plane of the two coordinates other than
    ``axis`` (in increasing order) and is swept over ``[0, length]``.
    """
    k = len(profile)
    others = [t for t in range(3) if t != axis]

    def place(pt, h):
        out = [0, 0, 0]
        out[others[0]], out[others[1]], out[axis] = pt[0], pt[1], h
        return tuple(out)

    verts = [place(pt, 0) for pt in profile] + [place(pt, length) for pt in profile]
    faces = [tuple(range(k - 1, -1, -1)), tuple(range(k, 2 * k))]
    faces += [(t, (t + 1) % k, k + (t + 1) % k, k + t) for t in range(k)]
    return _poly(verts, faces)


def trapezoid_prism() -> Polyhedron:
    """Trapezoid in the ``yz`` plane (wide side up) swept along ``x``.

    Pulled out through the wide top, its directions keep ``dx = 0``, so the
    direction set is a one-parameter fan: a segment of the chart.
    """
    return extrude([(1, 0), (2, 0), (3, 1), (0, 1)], 2, axis=0)


def l_prism() -> Polyhedron:
    return extrude([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], 1)


# --------------------------------------------------------------------------
# voxel solids

_CUBE_FACES = {
    (1, 0, 0): ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),
    (-1, 0, 0): ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)),
    (0, 1, 0): ((0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)),
    (0, -1, 0): ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)),
    (0, 0, 1): ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),
    (0, 0, -1): ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)),
}


def voxel_solid(cells: Iterable[tuple[int, int, int]]) -> Polyhedron:
    """Boundary of a union of unit cubes, with coplanar squares merged.

    The union must be a manifold solid whose merged faces have no holes.
    """
    cells = set(map(tuple, cells))
    index: dict[tuple, int] = {}
    faces = []
    for (x, y, z) in sorted(cells):
        for d, quad in _CUBE_FACES.items():
            if (x + d[0], y + d[1], z + d[2]) in cells:
                continue
            face = []
            for q in quad:
                key = (x + q[0], y + q[1], z + q[2])
                face.append(index.setdefault(key, len(index)))
            faces.append(tuple(face))
    verts = sorted(index, key=index.__getitem__)
    return _poly(verts, faces)


def notched_cube() -> Polyhedron:
    """3x3x3 block with a groove along ``y`` across the top."""
    cells = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)
             if not (x == 1 and z == 2)]
    return voxel_solid(cells)


def cross_notched_block() -> Polyhedron:
    """Block grooved along ``y`` on top and along ``x`` underneath: the two
    grooves pin every pull direction to zero, so nothing is castable."""
    cells = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)
             if not (x == 1 and z == 2) and not (y == 1 and z == 0)]
    return voxel_solid(cells)


def plane_partition(heights: Sequence[Sequence[int]]) -> Polyhedron:
    """Stack of unit columns whose heights never increase along ``x`` or ``y``.

    Such a stack always releases downward through its base.
    """
    cells = [(i, j, k) for i, row in enumerate(heights) for j, h in enumerate(row) for k in range(h)]
    return voxel_solid(cells)


def random_plane_partition(rng: random.Random, nx: int = 4, ny: int = 4, hmax: int = 4) -> Polyhedron:
    h = [[0] * ny for _ in range(nx)]
    for i in range(nx):
        for j in range(ny):
            cap = hmax
            if i:
                cap = min(cap, h[i - 1][j])
            if j:
                cap = min(cap, h[i][j - 1])
            lo = 1 if (i == 0 and j == 0) else 0
            h[i][j] = rng.randint(lo, cap) if cap >= lo else 0
    h[0][0] = max(h[0][0], 1)
    return plane_partition(h)


# --------------------------------------------------------------------------
# convex meshes

def paraboloid(k: int, top_gap: int = 1) -> Polyhedron:
    """Convex cup: ``z = x^2 + y^2`` over a ``k x k`` grid of planar quads,
    closed by four walls and a flat lid.  It has ``k*k + 5`` facets."""
    lo = -(k // 2)
    xs = range(lo, lo + k + 1)
    index = {}
    verts = []
    for i in xs:
        for j in xs:
            index[i, j] = len(verts)
            verts.append((i, j, i * i + j * j))
    top = max(v[2] for v in verts) + top_gap
    hi = lo + k
    corners = {}
    for (i, j) in ((lo, lo), (hi, lo), (hi, hi), (lo, hi)):
        corners[i, j] = len(verts)
        verts.append((i, j, top))
    faces = []
    for i in range(lo, hi):
        for j in range(lo, hi):
            # seen from below (outside) this order is counter-clockwise
            faces.append((index[i, j], index[i, j + 1], index[i + 1, j + 1], index[i + 1, j]))
    faces.append((corners[lo, lo], corners[hi, lo], corners[hi, hi], corners[lo, hi]))
    # walls, each a convex polygon: the rim curve plus two lid corners
    faces.append(tuple([index[i, lo] for i in range(lo, hi + 1)] + [corners[hi, lo], corners[lo, lo]]))
    faces.append(tuple([index[hi, j] for j in range(lo, hi + 1)] + [corners[hi, hi], corners[hi, lo]]))
    faces.append(tuple([index[i, hi] for i in range(hi, lo - 1, -1)] + [corners[lo, hi], corners[hi, hi]]))
    faces.append(tuple([index[lo, j] for j in range(hi, lo - 1, -1)] + [corners[lo, lo], corners[lo, hi]]))
    return build_polyhedron(verts, faces)


def cube_points(rng: random.Random, n: int, r: int = 1000) -> list[tuple[int, int, int]]:
    return [(rng.randint(-r, r), rng.randint(-r, r), rng.randint(-r, r)) for _ in range(n)]


def sphere_points(rng: random.Random, n: int, spread: int = 40) -> list[Vec3]:
    """Exact rational points on the unit sphere (inverse stereographic map)."""
    out = []
    for _ in range(n):
        p = Fraction(rng.randint(-spread, spread), rng.randint(1, spread // 2 + 1))
        q = Fraction(rng.randint(-spread, spread), rng.randint(1, spread // 2 + 1))
        s = p * p + q * q + 1
        pt = Vec3(2 * p / s, 2 * q / s, (p * p + q * q - 1) / s)
        out.append(pt if rng.random() < 0.5 else Vec3(pt.x, pt.y, -pt.z))
    return out


def truncated_box_points(rng: random.Random, cuts: int = 4, r: int = 12) -> list[tuple[int, int, int]]:
    """Box corners plus points on the box surface, so hulls keep parallel
    facet pairs and axis-aligned faces."""
    a, b, c = rng.randint(2, r), rng.randint(2, r), rng.randint(2, r)
    pts = [(x, y, z) for x in (0, a) for y in (0, b) for z in (0, c)]
    for _ in range(cuts):
        pts.append((rng.randint(0, a), rng.randint(0, b), rng.choice((0, c))))
        pts.append((rng.choice((0, a)), rng.randint(0, b), rng.randint(0, c)))
    return pts


def prism_points(rng: random.Random, k: int = 6, r: int = 50, h: int = 20) -> list[tuple[int, int, int]]:
    """Random polygon swept along ``z``: every side wall is vertical."""
    base = [(rng.randint(-r, r), rng.randint(-r, r)) for _ in range(k)]
    return [(x, y, 0) for x, y in base] + [(x, y, h) for x, y in base]


def radial_star(hull: Polyhedron, rng: random.Random, *, frac: float = 0.3,
                factors: Sequence = (Fraction(1, 2), Fraction(2, 3))) -> Polyhedron:
    """Pull some vertices of a convex polyhedron containing the origin
    toward the origin.

    Scaling vertices along their rays keeps the radial projection of every
    triangle, so the surface stays embedded (star-shaped about the origin).
    """
    verts, faces = triangulate(hull)
    new = []
    for v in verts:
        if rng.random() < frac:
            s = rng.choice(factors)
            new.append(Vec3(v.x * s, v.y * s, v.z * s))
        else:
            new.append(v)
    return _poly(new, faces)


def contains_origin_strictly(p: Polyhedron) -> bool:
    for f in p.facets:
        n = f.inward_normal
        v = p.vertices[f.boundary[0]]
        if not n[0] * v[0] + n[1] * v[1] + n[2] * v[2] < 0:
            return False
    return True


def star_polygon(rng: random.Random, k: int = 8, rmin: int = 3, rmax: int = 12) -> list[tuple]:
    """Random simple polygon, star-shaped about the origin, counter-clockwise.

    Vertices sit on rays through lattice directions taken in angular order,
    at random rational distances, so the polygon is simple by construction.
    """
    dirs = set()
    while len(dirs) < k:
        x, y = rng.randint(-6, 6), rng.randint(-6, 6)
        if (x, y) != (0, 0):
            g = math.gcd(x, y)
            dirs.add((x // g, y // g))
    ordered = sorted(dirs, key=lambda d: math.atan2(d[1], d[0]))
    # consecutive rays must turn by less than a half-turn for the origin to be interior
    for t in range(k):
        a, b = ordered[t], ordered[(t + 1) % k]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            return star_polygon(rng, k, rmin, rmax)
    out = []
    for x, y in ordered:
        s = Fraction(rng.randint(rmin, rmax), max(abs(x), abs(y)))
        out.append((x * s, y * s))
    return out


def random_star_prism(rng: random.Random, k: int = 8) -> Polyhedron:
    return extrude(star_polygon(rng, k), rng.randint(1, 5), axis=rng.randint(0, 2))


def affine_image(p: Polyhedron, m: Sequence[Sequence[int]]) -> Polyhedron:
    """Image of ``p`` under the invertible linear map ``m`` (rows).

    Castability is invariant: a valid pair ``(F, d)`` maps to ``(mF, md)``.
    """
    verts = [tuple(sum(Fraction(m[r][c]) * v[c] for c in range(3)) for r in range(3))
             for v in p.vertices]
    return _poly(verts, [f.boundary for f in p.facets])


def random_unimodular(rng: random.Random, steps: int = 3) -> list[list[int]]:
    """Product of random elementary shears: an integer matrix of determinant 1."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        s = rng.choice((-2, -1, 1, 2))
        m = [[m[r][c] + (s * m[j][c] if r == i else 0) for c in range(3)] for r in range(3)]
    return m


@functools.lru_cache(maxsize=8)
def _lattice_sphere(norm2: int) -> tuple[tuple[int, int, int], ...]:
    r = math.isqrt(norm2)
    out = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            z2 = norm2 - x * x - y * y
            if z2 < 0:
                continue
            z = math.isqrt(z2)
            if z * z == z2:
                out.append((x, y, z))
                if z:
                    out.append((x, y, -z))
    return tuple(out)


def lattice_sphere_points(rng: random.Random, n: int, norm2: int = 30030) -> list[tuple[int, int, int]]:
    """Distinct integer points with ``x^2 + y^2 + z^2 = norm2``, all in
    convex position; the default sphere carries 1536 of them."""
    pts = _lattice_sphere(norm2)
    return rng.sample(pts, min(n, len(pts)))
