"""
One facet at a time
===================

Can a part leave a one-piece mold through a chosen facet?  The facet's
outward normal becomes the pole of a chart, every other facet turns into a
linear constraint on that chart, and the question is a 2D feasibility
problem.
"""

from castability import shapes
from castability.casting import single_fad, single_fsd

# a square pyramid on the unit square with its apex at height one
pyramid = shapes.pyramid()
for f in pyramid.facets:
    print(f.id, "inward normal", tuple(f.inward_normal))

# %%
# One direction per facet.  Facets 1..4 are the sloped sides; pulling
# straight out of a side still slides along the base.
for i in range(pyramid.n_facets):
    print("facet", i, "->", single_fsd(pyramid, i))

# %%
# All directions for the base: a bounded square in the chart, so a whole
# solid cone of directions works.
cone = single_fad(pyramid, 0)
print(cone.region.kind.value, [tuple(map(str, v)) for v in cone.region.vertices])
print("lifted corner:", tuple(cone.lift(cone.region.vertices[0])))

# %%
# A notch blocks its own floor.
notched = shapes.notched_cube()
blocked = [i for i in range(notched.n_facets) if single_fsd(notched, i) is None]
print(len(blocked), "of", notched.n_facets, "facets have no pull direction")
