"""Brute-force reference answers.

Nothing here shares code with the solvers beyond the mesh type and exact
vector arithmetic.  The valid directions of a facet form a pointed convex
cone cut out by facet planes (pointed because the normals of a closed
surface positively span space), so when it is nonempty one of its extreme
rays is valid; every extreme ray is the cross product of two facet
normals.  Testing all ``+-n_j x n_k`` and ``+-n_j`` against every facet
therefore decides every facet exactly.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .casting import CastResult, TopFacet
from .errors import DegenerateInput
from .kernel import Vec3, _require_nonzero, cross, dot, primitive
from .mesh import Polyhedron, build_polyhedron, merge_coplanar

ORACLE_LIMIT = 200
_INT64_SAFE = 1 << 19


def is_valid_pair(p: Polyhedron, i: int, d) -> bool:
    """``d . n_i < 0`` and ``d . n_j >= 0`` for every other facet."""
    _require_nonzero(d)
    p.check_facet_id(i)
    for j, f in enumerate(p.facets):
        s = dot(d, f.inward_normal)
        if j == i:
            if s >= 0:
                return False
        elif s < 0:
            return False
    return True


def depth(p: Polyhedron, d) -> int:
    """Number of facets whose open hemisphere ``{d . n < 0}`` contains ``d``."""
    _require_nonzero(d)
    return sum(1 for f in p.facets if dot(d, f.inward_normal) < 0)


def _normal_array(p: Polyhedron) -> np.ndarray:
    normals = [tuple(int(c) for c in n) for n in p.normals]
    big = max(abs(c) for n in normals for c in n)
    return np.array(normals, dtype=np.int64 if big < _INT64_SAFE else object)


def _candidate_array(nrm: np.ndarray) -> np.ndarray:
    n = len(nrm)
    ii, jj = np.triu_indices(n, 1)
    cr = np.cross(nrm[ii], nrm[jj]) if nrm.dtype != object else np.array(
        [cross(nrm[a], nrm[b]) for a, b in zip(ii, jj)], dtype=object).reshape(-1, 3)
    cr = cr[np.any(cr != 0, axis=1)]
    return np.concatenate([nrm, -nrm, cr, -cr])


def candidate_directions(p: Polyhedron) -> list[Vec3]:
    """Facet normals and pairwise normal cross products, both signs, deduplicated."""
    out: dict[Vec3, None] = {}
    for row in _candidate_array(_normal_array(p)):
        out.setdefault(primitive(int(c) for c in row), None)
    return list(out)


def valid_facet_witnesses(p: Polyhedron, limit: int = ORACLE_LIMIT) -> dict[int, Vec3]:
    """Map each valid top facet to one valid pull direction."""
    if p.n_facets > limit:
        raise ValueError(f"oracle is limited to {limit} facets (got {p.n_facets})")
    nrm = _normal_array(p)
    cands = _candidate_array(nrm)
    found: dict[int, Vec3] = {}
    step = max(1, 2_000_000 // max(1, len(nrm)))
    for s in range(0, len(cands), step):
        block = cands[s:s + step]
        neg = (block @ nrm.T) < 0
        one = np.flatnonzero(neg.sum(axis=1) == 1)
        if len(one) == 0:
            continue
        facets = np.argmax(neg[one], axis=1)
        for row, f in zip(one, facets):
            f = int(f)
            if f not in found:
                found[f] = primitive(int(c) for c in block[row])
    return dict(sorted(found.items()))


def brute_force_top_facets(p: Polyhedron, limit: int = ORACLE_LIMIT) -> CastResult:
    wit = valid_facet_witnesses(p, limit)
    entries = tuple(TopFacet(i, p.normal(i), d) for i, d in wit.items())
    reasons = {j: "no valid direction" for j in range(p.n_facets) if j not in wit}
    return CastResult(p.n_facets, entries, None, reasons)


def min_candidate_depth(p: Polyhedron) -> int:
    nrm = _normal_array(p)
    cands = _candidate_array(nrm)
    return int(((cands @ nrm.T) < 0).sum(axis=1).min())


def paired_top_facet_violations(p: Polyhedron) -> list[tuple[int, list[int]]]:
    """Valid top facets with two or more valid top facets not adjacent to them."""
    valid = list(valid_facet_witnesses(p))
    bad = []
    for i in valid:
        nb = set(p.neighbors(i))
        far = [j for j in valid if j != i and j not in nb]
        if len(far) > 1:
            bad.append((i, far))
    return bad


def check_paired_top_facets(p: Polyhedron) -> bool:
    return not paired_top_facet_violations(p)


# --------------------------------------------------------------------------
# exact convex hull

def _scaled_ints(points: Sequence) -> list[tuple[int, int, int]]:
    fr = [tuple(Fraction(c) for c in pt) for pt in points]
    den = math.lcm(*(c.denominator for pt in fr for c in pt))
    return [tuple(int(c * den) for c in pt) for pt in fr]


def _hull_triangles(pts: list[tuple[int, int, int]], rng: random.Random):
    """Outward-oriented triangles of the hull of distinct integer points."""
    n = len(pts)
    order = list(range(n))
    rng.shuffle(order)
    # initial tetrahedron
    a = order[0]
    b = next((k for k in order if pts[k] != pts[a]), None)
    if b is None:
        raise DegenerateInput("all points coincide")
    ab = tuple(pts[b][t] - pts[a][t] for t in range(3))
    c = next((k for k in order if not Vec3(*cross(ab, _sub(pts[k], pts[a]))).is_zero()), None)
    if c is None:
        raise DegenerateInput("all points are collinear")
    nrm = cross(ab, _sub(pts[c], pts[a]))
    d = next((k for k in order if dot(nrm, _sub(pts[k], pts[a])) != 0), None)
    if d is None:
        raise DegenerateInput("all points are coplanar")
    if dot(nrm, _sub(pts[d], pts[a])) > 0:
        b, c = c, b

    big = max(abs(x) for pt in pts for x in pt)
    dtype = np.int64 if big < _INT64_SAFE else object
    P = np.array(pts, dtype=dtype)

    faces: list[Optional[tuple[int, int, int]]] = []
    normals: list = []
    offsets: list = []
    edge_face: dict[tuple[int, int], int] = {}

    def add(u, v, w):
        fid = len(faces)
        faces.append((u, v, w))
        nv = cross(_sub(pts[v], pts[u]), _sub(pts[w], pts[u]))
        normals.append(nv)
        offsets.append(dot(nv, pts[u]))
        for e in ((u, v), (v, w), (w, u)):
            edge_face[e] = fid
        return fid

    for tri in ((a, b, c), (a, c, d), (a, d, b), (b, d, c)):
        add(*tri)
    alive = [True] * 4
    used = {a, b, c, d}
    N = np.array(normals, dtype=dtype)
    O = np.array(offsets, dtype=dtype)
    for k in order:
        if k in used:
            continue
        if len(N) < len(faces):
            N = np.array(normals, dtype=dtype)
            O = np.array(offsets, dtype=dtype)
        vis = np.flatnonzero((N @ P[k] > O) & np.array(alive))
        if len(vis) == 0:
            continue
        vis_set = set(int(f) for f in vis)
        horizon = []
        for f in vis_set:
            u, v, w = faces[f]
            for e in ((u, v), (v, w), (w, u)):
                if edge_face[(e[1], e[0])] not in vis_set:
                    horizon.append(e)
        for f in vis_set:
            alive[f] = False
        for u, v in horizon:
            add(u, v, k)
            alive.append(True)
        used.add(k)
    return [faces[f] for f in range(len(faces)) if alive[f]]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def convex_hull(points: Iterable, seed: int = 0) -> Polyhedron:
    """Exact convex hull with coplanar triangles merged into polygons."""
    raw = [tuple(Fraction(c) for c in pt) for pt in points]
    uniq = list(dict.fromkeys(raw))
    if len(uniq) < 4:
        raise DegenerateInput("a hull needs at least four distinct points")
    for _ in range(2):
        ints = _scaled_ints(uniq)
        tris = _hull_triangles(ints, random.Random(seed))
        used = sorted({v for t in tris for v in t})
        remap = {v: k for k, v in enumerate(used)}
        verts = [Vec3.of(*uniq[v]) for v in used]
        poly = merge_coplanar(build_polyhedron(verts, [tuple(remap[v] for v in t) for t in tris]))
        count = [0] * len(poly.vertices)
        for f in poly.facets:
            for v in f.boundary:
                count[v] += 1
        extreme = [poly.vertices[v] for v in range(len(count)) if count[v] >= 3]
        if len(extreme) == len(poly.vertices):
            return poly
        uniq = [tuple(Fraction(c) for c in v) for v in extreme]
    return poly


def hull_facet_of(hull: Polyhedron, p: Polyhedron, i: int) -> Optional[int]:
    """Facet of ``hull`` lying in the plane of facet ``i`` of ``p``, if any."""
    n = p.normal(i)
    off = dot(n, p.vertices[p.facets[i].boundary[0]])
    for f in hull.facets:
        if f.inward_normal == n and dot(n, hull.vertices[f.boundary[0]]) == off:
            return f.id
    return None
