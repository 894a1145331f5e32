"""Exception hierarchy shared by every module."""


class CastingError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVector(CastingError, ValueError):
    pass


class MeshError(CastingError):
    """Raised when an input mesh is not a valid closed polyhedron."""


class ParseError(MeshError):
    pass


class NotClosed(MeshError):
    pass


class NonManifold(MeshError):
    pass


class InconsistentOrientation(MeshError):
    pass


class NonPlanarFacet(MeshError):
    pass


class NonSimpleFacet(MeshError):
    pass


class MergeCreatesNonSimpleFacet(MeshError):
    pass


class DegenerateInput(MeshError):
    pass


class NotConvex(CastingError):
    pass


class NotCovered(CastingError):
    """The open hemispheres of the facets fail to cover the sphere.

    This cannot happen for a closed regular solid, so it signals an input
    that slipped past validation.
    """


class BadFacetId(CastingError, IndexError):
    pass


class StrictConstraint(CastingError, ValueError):
    pass


class NotSorted(CastingError, ValueError):
    pass
