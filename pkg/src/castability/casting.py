"""Castability solvers.

A facet ``F_i`` with inward normal ``n_i`` is a valid top facet for the pull
direction ``d`` when ``d . n_i < 0`` and ``d . n_j >= 0`` for every other
facet (sliding along a mold wall is allowed).  For one facet this is a
two-variable problem in the chart whose pole is the outward normal
``-n_i``; for all facets at once, a covering set of open hemispheres limits
the candidates to at most twelve facets, of which at most six survive.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .direction_space import DirectionCone, HalfPlane, chart_coefficients, cone_from_region
from .errors import NotConvex, NotCovered
from .kernel import Basis, Vec3, orthogonal_basis, primitive, rotation_to_top
from .lp2d import intersect_halfplanes, intersect_sorted_halfplanes, solve_feasibility
from .mesh import Polyhedron, is_convex

SEED_POLES = (Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1))

EXCLUDED = "excluded by covering set"
NO_DIRECTION = "no valid direction"


@dataclass(frozen=True)
class CoveringSet:
    """Facets whose open hemispheres ``{d : d . n < 0}`` cover the sphere.

    ``witnesses[k]`` are the facets covering the open hemisphere around
    ``SEED_POLES[k]``.
    """

    members: tuple[int, ...]
    witnesses: tuple[tuple[int, ...], ...]

    def covers(self, p: Polyhedron, d) -> bool:
        """Whether ``d`` lies strictly inside some member hemisphere."""
        for j in self.members:
            n = p.normal(j)
            if d[0] * n[0] + d[1] * n[1] + d[2] * n[2] < 0:
                return True
        return False


@dataclass(frozen=True)
class TopFacet:
    facet: int
    inward_normal: Vec3
    direction: Vec3
    cone: Optional[DirectionCone] = None

    @property
    def rotation(self) -> np.ndarray:
        """Rotation putting this facet on top of the mold."""
        return rotation_to_top(self.inward_normal)

    def rotated_direction(self) -> np.ndarray:
        d = self.direction.to_float()
        return self.rotation @ (d / np.linalg.norm(d))


@dataclass(frozen=True)
class CastResult:
    n_facets: int
    entries: tuple[TopFacet, ...]
    covering_set: Optional[CoveringSet] = None
    # why each facet without an entry was rejected
    reasons: dict = field(default_factory=dict)

    @property
    def castable(self) -> bool:
        return bool(self.entries)

    @property
    def facets(self) -> tuple[int, ...]:
        return tuple(e.facet for e in self.entries)

    def entry(self, facet: int) -> Optional[TopFacet]:
        for e in self.entries:
            if e.facet == facet:
                return e
        return None


def _map(fn: Callable, items: Sequence, workers: Optional[int]) -> list:
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def covering_set(p: Polyhedron, seed: int = 0) -> CoveringSet:
    """At most twelve facets whose open hemispheres cover the sphere.

    Every direction lies strictly inside the open hemisphere of one of the
    four tetrahedral poles.  Within one such hemisphere the closed
    complements of the facet hemispheres are half-planes of the pole's
    chart; their common intersection is empty exactly when the facets cover
    it, and then at most three of them already do.
    """
    normals = p.normals
    members: set[int] = set()
    witnesses = []
    for k, q in enumerate(SEED_POLES):
        coeffs = chart_coefficients(normals, orthogonal_basis(q))
        # a facet whose open hemisphere contains the whole seed hemisphere
        full = next((j for j, (a, b, c) in enumerate(coeffs) if a == 0 and b == 0 and c < 0), None)
        if full is not None:
            wit: tuple[int, ...] = (full,)
        else:
            res = solve_feasibility(coeffs, seed * 4 + k)
            if res.feasible:
                raise NotCovered(f"no facet hemisphere contains the direction "
                                 f"{tuple(orthogonal_basis(q).lift(*res.point))}")
            wit = tuple(sorted(res.witness))
        witnesses.append(wit)
        members.update(wit)
    return CoveringSet(tuple(sorted(members)), tuple(witnesses))


def facet_chart(p: Polyhedron, i: int) -> Basis:
    """Chart around the outward normal of facet ``i``."""
    return orthogonal_basis(-p.normal(i))


def facet_constraints(p: Polyhedron, i: int, facets: Optional[Sequence[int]] = None):
    """Chart and half-planes ``d . n_j >= 0`` for facet ``i``'s pull directions.

    ``facets`` restricts the constraining facets (all others by default).
    """
    p.check_facet_id(i)
    chart = facet_chart(p, i)
    if facets is None:
        facets = [j for j in range(p.n_facets) if j != i]
    coeffs = chart_coefficients([p.normal(j) for j in facets], chart)
    return chart, list(facets), coeffs


def single_fsd(p: Polyhedron, i: int, seed: int = 0) -> Optional[Vec3]:
    """One valid pull direction for facet ``i`` (primitive integers) or ``None``."""
    chart, _, coeffs = facet_constraints(p, i)
    res = solve_feasibility(coeffs, seed)
    if not res.feasible:
        return None
    return primitive(chart.lift(*res.point))


def single_fad(p: Polyhedron, i: int) -> DirectionCone:
    """Every valid pull direction for facet ``i`` as a region of its chart."""
    chart, ids, coeffs = facet_constraints(p, i)
    hps = [HalfPlane(a, b, c, source=j) for j, (a, b, c) in zip(ids, coeffs)]
    return cone_from_region(i, chart, intersect_halfplanes(hps))


def all_fsd(p: Polyhedron, seed: int = 0, *, workers: Optional[int] = None) -> CastResult:
    """All valid top facets, each with one pull direction."""
    cs = covering_set(p, seed)
    dirs = _map(lambda i: single_fsd(p, i, seed), cs.members, workers)
    entries = []
    reasons = {}
    for i, d in zip(cs.members, dirs):
        if d is None:
            reasons[i] = NO_DIRECTION
        else:
            entries.append(TopFacet(i, p.normal(i), d))
    member_set = set(cs.members)
    for j in range(p.n_facets):
        if j not in member_set:
            reasons[j] = EXCLUDED
    return CastResult(p.n_facets, tuple(entries), cs, reasons)


def with_cones(p: Polyhedron, res: CastResult, *, workers: Optional[int] = None,
               keep_directions: bool = False) -> CastResult:
    """Attach the full direction cone to every entry of ``res``."""
    cones = _map(lambda e: single_fad(p, e.facet), res.entries, workers)
    entries = []
    for e, cone in zip(res.entries, cones):
        d = e.direction if keep_directions else cone.sample_direction
        entries.append(TopFacet(e.facet, e.inward_normal, d, cone))
    return CastResult(res.n_facets, tuple(entries), res.covering_set, res.reasons)


def all_fad(p: Polyhedron, seed: int = 0, *, workers: Optional[int] = None) -> CastResult:
    """All valid top facets, each with its full cone of pull directions.

    The one-direction pass runs first, so a non-castable part costs only
    linear time.  Members it rejects have empty cones, so cones are built
    only for its entries.
    """
    fsd = all_fsd(p, seed, workers=workers)
    if not fsd.castable:
        return fsd
    return with_cones(p, fsd, workers=workers)


def convex_facet_cone(p: Polyhedron, i: int) -> DirectionCone:
    """Cone of facet ``i`` of a convex polyhedron from its neighbors alone.

    Walking the boundary of a facet visits the neighbors in the angular
    order of their chart half-planes, so the sorted intersection applies.
    """
    chart, ids, coeffs = facet_constraints(p, i, p.neighbors(i))
    hps = [HalfPlane(a, b, c, source=j) for j, (a, b, c) in zip(ids, coeffs)]
    return cone_from_region(i, chart, intersect_sorted_halfplanes(hps))


def convex_all_fad(p: Polyhedron, *, workers: Optional[int] = None,
                   check: bool = True) -> CastResult:
    """All valid top facets of a convex polyhedron in linear time."""
    if check and not is_convex(p):
        raise NotConvex("polyhedron is not convex")
    cones = _map(lambda i: convex_facet_cone(p, i), range(p.n_facets), workers)
    entries = []
    reasons = {}
    for i, cone in enumerate(cones):
        if cone.is_empty:
            reasons[i] = NO_DIRECTION
        else:
            entries.append(TopFacet(i, p.normal(i), cone.sample_direction, cone))
    return CastResult(p.n_facets, tuple(entries), None, reasons)
