"""
Checking against brute force
============================

The valid cone of a facet, when nonempty, has an extreme ray, and every
extreme ray is a facet normal or the cross product of two.  Testing that
finite candidate set against every facet gives an independent answer for
small meshes.
"""

import random

from castability import shapes
from castability.casting import all_fsd
from castability.oracle import (convex_hull, hull_facet_of, is_valid_pair,
                                valid_facet_witnesses)

rng = random.Random(5)
for name, p in [("l_prism", shapes.l_prism()), ("notched_cube", shapes.notched_cube()),
                ("plane partition", shapes.random_plane_partition(rng))]:
    truth = tuple(valid_facet_witnesses(p))
    got = all_fsd(p)
    ok = got.facets == truth and all(is_valid_pair(p, e.facet, e.direction) for e in got.entries)
    print(f"{name:16s} solver {got.facets} oracle {truth} agree={ok}")

# %%
# A valid pair of a part stays valid for its convex hull: the top facet
# spans a hull facet and nothing on the hull can block more than the part.
p = shapes.notched_cube()
hull = convex_hull(p.vertices)
for i, d in valid_facet_witnesses(p).items():
    j = hull_facet_of(hull, p, i)
    print("facet", i, "-> hull facet", j, is_valid_pair(hull, j, d))
