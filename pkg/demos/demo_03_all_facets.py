"""
Every facet at once
===================

Directions strictly inside a facet's open hemisphere are the only ones that
can lift it off, and a valid top facet is the single facet whose hemisphere
contains its pull direction.  Four open hemispheres around tetrahedral
poles cover the sphere, and each pole's hemisphere is covered by at most
three facets.  So at most twelve facets need a closer look, and at most six
of those can be valid.
"""

from castability import shapes
from castability.casting import all_fad, all_fsd, covering_set

cube = shapes.cube()
cs = covering_set(cube)
print("covering set", cs.members, "per pole", cs.witnesses)

res = all_fsd(cube)
print("castable:", res.castable, "top facets:", res.facets)
for e in res.entries:
    print("  facet", e.facet, "pull", tuple(e.direction))

# %%
# The full cones.  Opposite faces pin each cube cone to a single ray.
for e in all_fad(cube).entries:
    print("  facet", e.facet, e.cone.region.kind.value)

# %%
# Parts that cannot be cast stop after the cheap pass.
blocked = all_fad(shapes.cross_notched_block())
print("cross-notched block castable:", blocked.castable)
print("first rejections:", dict(list(blocked.reasons.items())[:4]))

# %%
# Rotating a result so the top facet faces up.
e = res.entries[0]
print(e.rotation.round(3))
print("pull direction after rotation:", e.rotated_direction().round(3))
