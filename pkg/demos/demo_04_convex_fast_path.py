"""
Convex parts
============

For a convex polyhedron only the neighbors of a facet can block it, and
walking the facet boundary already lists their constraints in angular
order.  No sorting means linear total time, and the answer matches the
general solver.
"""

import random
import time
from fractions import Fraction

from castability import shapes
from castability.casting import all_fad, convex_all_fad
from castability.oracle import convex_hull

# a frustum: a random polygon at z=0 and its half-size copy at z=10
rng = random.Random(4)
base = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(12)]
pts = [(x, y, 0) for x, y in base] + [(Fraction(x, 2), Fraction(y, 2), 10) for x, y in base]
hull = convex_hull(pts)
print(hull.n_facets, "facets")

fast = convex_all_fad(hull)
slow = all_fad(hull)
print("fast:", fast.facets, "general:", slow.facets)
print("same cones:", [e.cone.region.signature() for e in fast.entries]
      == [e.cone.region.signature() for e in slow.entries])
for e in fast.entries:
    print("  facet", e.facet, e.cone.region.kind.value, "pull", tuple(e.direction))

# %%
# A shallow paraboloid with a flat cap: only the cap can be on top.
for k in (10, 30, 100):
    p = shapes.paraboloid(k)
    t0 = time.perf_counter()
    r = convex_all_fad(p)
    print(f"{p.n_facets:6d} facets  {time.perf_counter() - t0:6.2f} s  top {r.facets}")
