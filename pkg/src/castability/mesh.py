"""Polyhedron representation, OFF/OBJ input, validation and coplanar merging.

Facets are stored with their boundary counter-clockwise when seen from
outside the solid, and with an exact primitive-integer inward normal.
"""
from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    InconsistentOrientation,
    MergeCreatesNonSimpleFacet,
    NonManifold,
    NonPlanarFacet,
    NonSimpleFacet,
    NotClosed,
    ParseError,
    DegenerateInput,
)
from .kernel import Vec3, as_scalar, cross, dot, primitive


@dataclass(frozen=True)
class Facet:
    id: int
    boundary: tuple[int, ...]
    inward_normal: Vec3
    # ids of the input faces this facet was built from
    source: tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class Polyhedron:
    vertices: tuple[Vec3, ...]
    facets: tuple[Facet, ...]
    # edge_adjacency[i][k] is the facet across edge boundary[k] -> boundary[k+1]
    edge_adjacency: tuple[tuple[int, ...], ...]
    _int_vertices: tuple[tuple[int, int, int], ...] = field(default=(), repr=False)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def normal(self, i: int) -> Vec3:
        return self.facets[i].inward_normal

    @property
    def normals(self) -> list[Vec3]:
        return [f.inward_normal for f in self.facets]

    def neighbors(self, i: int) -> list[int]:
        """Edge-neighbors of facet ``i`` in boundary order, without repeats."""
        seen: dict[int, None] = {}
        for j in self.edge_adjacency[i]:
            seen.setdefault(j, None)
        return list(seen)

    def int_vertices(self) -> tuple[tuple[int, int, int], ...]:
        """Vertices uniformly rescaled to integers (a positive similarity)."""
        if self._int_vertices:
            return self._int_vertices
        return _integer_coords(self.vertices)

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for f in self.facets:
            b = f.boundary
            for k in range(len(b)):
                a, c = b[k], b[(k + 1) % len(b)]
                out.add((a, c) if a < c else (c, a))
        return out

    def euler_characteristic(self) -> int:
        used = {v for f in self.facets for v in f.boundary}
        return len(used) - len(self.edges()) + len(self.facets)

    def facet_centroid(self, i: int) -> Vec3:
        b = self.facets[i].boundary
        k = len(b)
        return Vec3(*(sum(Fraction(self.vertices[v][c]) for v in b) / k for c in range(3)))

    def centroid(self) -> Vec3:
        used = sorted({v for f in self.facets for v in f.boundary})
        k = len(used)
        return Vec3(*(sum(Fraction(self.vertices[v][c]) for v in used) / k for c in range(3)))

    def check_facet_id(self, i: int) -> None:
        from .errors import BadFacetId

        if not isinstance(i, int) or not 0 <= i < len(self.facets):
            raise BadFacetId(f"facet id {i!r} out of range 0..{len(self.facets) - 1}")


def _integer_coords(vertices: Sequence[Vec3]) -> tuple[tuple[int, int, int], ...]:
    den = 1
    for v in vertices:
        for c in v:
            if isinstance(c, Fraction) and c.denominator != 1:
                den = math.lcm(den, c.denominator)
    if den == 1:
        return tuple((int(v[0]), int(v[1]), int(v[2])) for v in vertices)
    return tuple(tuple(int(c * den) for c in v) for v in vertices)  # type: ignore[misc]


# --------------------------------------------------------------------------
# planar polygon helpers (integer 2D coordinates)

def _orient2(a, b, c) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _half(d) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _convex_simple(pts) -> bool:
    """True if ``pts`` is a convex polygon winding exactly once (either way)."""
    k = len(pts)
    dirs = [(pts[(t + 1) % k][0] - pts[t][0], pts[(t + 1) % k][1] - pts[t][1]) for t in range(k)]
    sign = 0
    for t in range(k):
        d0, d1 = dirs[t], dirs[(t + 1) % k]
        cr = d0[0] * d1[1] - d0[1] * d1[0]
        if cr == 0:
            if d0[0] * d1[0] + d0[1] * d1[1] <= 0:
                return False
            continue
        s = 1 if cr > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    if sign == 0:
        return False
    if sign < 0:
        dirs = [(d[0], -d[1]) for d in dirs]
    # each left turn is a rotation in [0, pi); count passes through angle zero
    wraps = sum(1 for t in range(k) if _half(dirs[t]) > _half(dirs[(t + 1) % k]))
    return wraps == 1


def _segments_intersect(p1, p2, p3, p4) -> bool:
    d1 = _orient2(p3, p4, p1)
    d2 = _orient2(p3, p4, p2)
    d3 = _orient2(p1, p2, p3)
    d4 = _orient2(p1, p2, p4)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True

    def on_seg(a, b, c):
        return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))

    return ((d1 == 0 and on_seg(p3, p4, p1)) or (d2 == 0 and on_seg(p3, p4, p2))
            or (d3 == 0 and on_seg(p1, p2, p3)) or (d4 == 0 and on_seg(p1, p2, p4)))


def polygon_is_simple(pts) -> bool:
    k = len(pts)
    if k < 3 or len(set(pts)) != k:
        return False
    if _convex_simple(pts):
        return True
    for t in range(k):
        a, b, c = pts[t], pts[(t + 1) % k], pts[(t + 2) % k]
        if _orient2(a, b, c) == 0 and (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) < 0:
            return False
    for s in range(k):
        for t in range(s + 2, k):
            if s == 0 and t == k - 1:
                continue
            if _segments_intersect(pts[s], pts[(s + 1) % k], pts[t], pts[(t + 1) % k]):
                return False
    return True


def _project(points3, normal):
    drop = max(range(3), key=lambda c: abs(normal[c]))
    keep = [c for c in range(3) if c != drop]
    return [(p[keep[0]], p[keep[1]]) for p in points3]


def _newell(points3) -> tuple[int, int, int]:
    nx = ny = nz = 0
    k = len(points3)
    for t in range(k):
        x0, y0, z0 = points3[t]
        x1, y1, z1 = points3[(t + 1) % k]
        nx += (y0 - y1) * (z0 + z1)
        ny += (z0 - z1) * (x0 + x1)
        nz += (x0 - x1) * (y0 + y1)
    return nx, ny, nz


# --------------------------------------------------------------------------
# construction and validation

def build_polyhedron(vertices: Sequence, faces: Sequence[Sequence[int]], *,
                     sources: Sequence[tuple[int, ...]] | None = None,
                     merged: bool = False) -> Polyhedron:
    """Validate a polygon soup and return the oriented :class:`Polyhedron`.

    Boundaries are re-oriented as a whole when the input winds clockwise
    seen from outside; a mix of both windings is an error.
    """
    verts = tuple(v if isinstance(v, Vec3) else Vec3.of(*v) for v in vertices)
    nv = len(verts)
    faces = [tuple(int(i) for i in f) for f in faces]
    if len(faces) < 4:
        raise DegenerateInput(f"a closed polyhedron needs at least 4 facets, got {len(faces)}")
    simple_error = MergeCreatesNonSimpleFacet if merged else NonSimpleFacet
    for fi, f in enumerate(faces):
        if len(f) < 3:
            raise ParseError(f"face {fi} has fewer than 3 vertices")
        for v in f:
            if not 0 <= v < nv:
                raise ParseError(f"face {fi} references missing vertex {v}")
        if len(set(f)) != len(f):
            raise simple_error(f"face {fi} repeats a vertex")

    # edge manifoldness and orientation consistency
    uses: dict[tuple[int, int], list[tuple[int, bool]]] = {}
    for fi, f in enumerate(faces):
        k = len(f)
        for t in range(k):
            a, b = f[t], f[(t + 1) % k]
            key = (a, b) if a < b else (b, a)
            uses.setdefault(key, []).append((fi, a < b))
    for key, lst in uses.items():
        if len(lst) == 1:
            raise NotClosed(f"edge {key} bounds only face {lst[0][0]}")
        if len(lst) > 2:
            raise NonManifold(f"edge {key} is shared by faces {[u[0] for u in lst]}")
        if lst[0][0] == lst[1][0]:
            raise NonManifold(f"edge {key} appears twice in face {lst[0][0]}")
    for key, lst in uses.items():
        if lst[0][1] == lst[1][1]:
            raise InconsistentOrientation(
                f"faces {lst[0][0]} and {lst[1][0]} traverse edge {key} in the same direction")

    ivs = _integer_coords(verts)
    newells = []
    for fi, f in enumerate(faces):
        pts = [ivs[v] for v in f]
        n = _newell(pts)
        if n == (0, 0, 0):
            raise NonPlanarFacet(f"face {fi} has zero area")
        p0 = pts[0]
        for p in pts[1:]:
            if n[0] * (p[0] - p0[0]) + n[1] * (p[1] - p0[1]) + n[2] * (p[2] - p0[2]) != 0:
                raise NonPlanarFacet(f"face {fi} is not planar")
        if len(f) > 3 and not polygon_is_simple(_project(pts, n)):
            raise simple_error(f"face {fi} is not a simple polygon")
        newells.append(n)

    six_vol = sum(dot(n, ivs[f[0]]) for n, f in zip(newells, faces))
    if six_vol == 0:
        raise DegenerateInput("enclosed volume is zero")
    if six_vol < 0:
        faces = [tuple(reversed(f)) for f in faces]
        newells = [(-n[0], -n[1], -n[2]) for n in newells]

    directed: dict[tuple[int, int], int] = {}
    for fi, f in enumerate(faces):
        k = len(f)
        for t in range(k):
            directed[(f[t], f[(t + 1) % k])] = fi
    adjacency = []
    for f in faces:
        k = len(f)
        adjacency.append(tuple(directed[(f[(t + 1) % k], f[t])] for t in range(k)))

    if sources is None:
        sources = [(fi,) for fi in range(len(faces))]
    facets = tuple(
        Facet(fi, f, primitive((-n[0], -n[1], -n[2])), tuple(src))
        for fi, (f, n, src) in enumerate(zip(faces, newells, sources))
    )
    return Polyhedron(verts, facets, tuple(adjacency), ivs)


# --------------------------------------------------------------------------
# file formats

def _tokens(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line.split()


def parse_off(text: str) -> tuple[list[Vec3], list[tuple[int, ...]]]:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty OFF input")
    head = lines[0]
    pos = 0
    if head[0].upper() == "OFF":
        rest = head[1:]
        pos = 1
        if not rest:
            if len(lines) < 2:
                raise ParseError("missing OFF counts line")
            rest = lines[1]
            pos = 2
    else:
        if head[0].upper().endswith("OFF"):
            raise ParseError(f"unsupported OFF variant {head[0]!r}")
        rest = head
        pos = 1
    try:
        nv, nf = int(rest[0]), int(rest[1])
    except (IndexError, ValueError):
        raise ParseError(f"bad OFF counts line: {' '.join(rest)!r}") from None
    if len(lines) < pos + nv + nf:
        raise ParseError(f"OFF declares {nv} vertices and {nf} faces but the file is truncated")
    verts = []
    for t in range(nv):
        toks = lines[pos + t]
        try:
            verts.append(Vec3.of(toks[0], toks[1], toks[2]))
        except (IndexError, ValueError, ZeroDivisionError):
            raise ParseError(f"bad vertex line {t}: {' '.join(toks)!r}") from None
    faces = []
    for t in range(nf):
        toks = lines[pos + nv + t]
        try:
            k = int(toks[0])
            faces.append(tuple(int(x) for x in toks[1:1 + k]))
        except (IndexError, ValueError):
            raise ParseError(f"bad face line {t}: {' '.join(toks)!r}") from None
        if len(faces[-1]) != k:
            raise ParseError(f"face line {t} lists fewer than {k} indices")
    return verts, faces


def parse_obj(text: str) -> tuple[list[Vec3], list[tuple[int, ...]]]:
    verts: list[Vec3] = []
    faces = []
    for toks in _tokens(text):
        tag = toks[0]
        if tag == "v":
            try:
                verts.append(Vec3.of(toks[1], toks[2], toks[3]))
            except (IndexError, ValueError, ZeroDivisionError):
                raise ParseError(f"bad OBJ vertex: {' '.join(toks)!r}") from None
        elif tag == "f":
            face = []
            for tok in toks[1:]:
                try:
                    idx = int(tok.split("/", 1)[0])
                except ValueError:
                    raise ParseError(f"bad OBJ face index {tok!r}") from None
                face.append(idx - 1 if idx > 0 else len(verts) + idx)
            faces.append(tuple(face))
    if not verts:
        raise ParseError("OBJ input has no vertices")
    return verts, faces


def load_off(text: str) -> Polyhedron:
    """Parse and validate OFF text (coordinates read as exact rationals)."""
    return build_polyhedron(*parse_off(text))


def load_obj(text: str) -> Polyhedron:
    return build_polyhedron(*parse_obj(text))


def load_mesh(path: str | os.PathLike, fmt: str | None = None) -> Polyhedron:
    path = os.fspath(path)
    if fmt is None:
        fmt = "obj" if path.lower().endswith(".obj") else "off"
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "off":
        return load_off(text)
    if fmt == "obj":
        return load_obj(text)
    raise ValueError(f"unknown mesh format {fmt!r}")


def _coord_str(c) -> str:
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dump_off(p: Polyhedron) -> str:
    used = sorted({v for f in p.facets for v in f.boundary})
    remap = {v: k for k, v in enumerate(used)}
    out = ["OFF", f"{len(used)} {len(p.facets)} 0"]
    for v in used:
        out.append(" ".join(_coord_str(c) for c in p.vertices[v]))
    for f in p.facets:
        out.append(" ".join([str(len(f.boundary))] + [str(remap[v]) for v in f.boundary]))
    return "\n".join(out) + "\n"


def soup_to_off(vertices: Iterable, faces: Iterable[Sequence[int]]) -> str:
    vertices = list(vertices)
    faces = list(faces)
    out = ["OFF", f"{len(vertices)} {len(faces)} 0"]
    out += [" ".join(_coord_str(c) for c in v) for v in vertices]
    out += [" ".join([str(len(f))] + [str(i) for i in f]) for f in faces]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# preprocessing

def _plane_key(p: Polyhedron, f: Facet):
    n = f.inward_normal
    return n, dot(n, p.int_vertices()[f.boundary[0]])


def merge_coplanar(p: Polyhedron) -> Polyhedron:
    """Merge each maximal edge-connected set of facets lying in one plane
    with the same normal into a single facet.

    Unreferenced vertices are dropped and facet ids are renumbered; the
    ``source`` field of each new facet lists the input faces it absorbed.
    """
    n = len(p.facets)
    keys = [_plane_key(p, f) for f in p.facets]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    any_merge = False
    for i in range(n):
        for j in p.edge_adjacency[i]:
            if j > i and keys[i] == keys[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
                    any_merge = True
    if not any_merge:
        return p

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    new_faces = []
    new_sources = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        members = groups[root]
        src = tuple(sorted(s for i in members for s in p.facets[i].source))
        if len(members) == 1:
            new_faces.append(p.facets[members[0]].boundary)
            new_sources.append(src)
            continue
        in_group = set(members)
        succ: dict[int, int] = {}
        for i in members:
            b = p.facets[i].boundary
            k = len(b)
            for t in range(k):
                if p.edge_adjacency[i][t] not in in_group:
                    a, c = b[t], b[(t + 1) % k]
                    if a in succ:
                        raise MergeCreatesNonSimpleFacet(
                            f"merging faces {sorted(src)} pinches at vertex {a}")
                    succ[a] = c
        start = min(succ)
        cycle = [start]
        cur = succ[start]
        while cur != start:
            cycle.append(cur)
            cur = succ[cur]
            if len(cycle) > len(succ):
                raise MergeCreatesNonSimpleFacet(f"merging faces {sorted(src)} loops")
        if len(cycle) != len(succ):
            raise MergeCreatesNonSimpleFacet(
                f"merging faces {sorted(src)} leaves a hole (boundary has several loops)")
        new_faces.append(tuple(cycle))
        new_sources.append(src)

    used = sorted({v for f in new_faces for v in f})
    remap = {v: k for k, v in enumerate(used)}
    verts = [p.vertices[v] for v in used]
    faces = [tuple(remap[v] for v in f) for f in new_faces]
    return build_polyhedron(verts, faces, sources=new_sources, merged=True)


def is_convex(p: Polyhedron, *, exhaustive: bool = False) -> bool:
    """Whether every vertex lies on the inner closed side of every facet plane.

    The default test is local: every facet is a convex polygon, every edge
    has a convex dihedral angle and the surface is connected.  For the
    embedded closed surfaces accepted by :func:`build_polyhedron` this is
    equivalent to the global definition and runs in linear time.
    ``exhaustive=True`` checks all facet/vertex pairs directly.
    """
    iv = p.int_vertices()
    used = sorted({v for f in p.facets for v in f.boundary})
    if exhaustive:
        for f in p.facets:
            n = f.inward_normal
            off = dot(n, iv[f.boundary[0]])
            if any(dot(n, iv[v]) < off for v in used):
                return False
        return True

    for f in p.facets:
        n = f.inward_normal
        b = f.boundary
        k = len(b)
        for t in range(k):
            p0, p1, p2 = iv[b[t]], iv[b[(t + 1) % k]], iv[b[(t + 2) % k]]
            e0 = (p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2])
            e1 = (p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2])
            if dot(cross(e0, e1), n) > 0:
                return False
        off = dot(n, iv[b[0]])
        for j in set(p.edge_adjacency[f.id]):
            if any(dot(n, iv[v]) < off for v in p.facets[j].boundary):
                return False
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in p.edge_adjacency[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == len(p.facets)


def prepare(p: Polyhedron, *, merge: bool = True) -> Polyhedron:
    return merge_coplanar(p) if merge else p
