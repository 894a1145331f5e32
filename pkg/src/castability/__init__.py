"""Single-part mold castability of polyhedra.

A part can be cast in a one-piece mold when some facet can serve as the
open top and the part can then be translated out without colliding with the
mold.  The solvers report every such top facet together with one or all of
its pull-out directions, in exact rational arithmetic.
"""
from .casting import (
    CastResult,
    CoveringSet,
    TopFacet,
    all_fad,
    all_fsd,
    convex_all_fad,
    covering_set,
    single_fad,
    single_fsd,
)
from .direction_space import ConvexRegion, DirectionCone, HalfPlane, RegionKind, project_hemisphere
from .errors import *  # noqa: F401,F403
from .kernel import Vec3, orthogonal_basis, rotation_to_top
from .lp2d import feasible_point, intersect_halfplanes, intersect_sorted_halfplanes
from .mesh import Polyhedron, build_polyhedron, is_convex, load_mesh, merge_coplanar, prepare

__version__ = "0.1.0"
