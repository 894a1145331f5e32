"""
Exact half-plane intersection
=============================

The chart regions are intersections of half-planes ``a*x + b*y + c >= 0``
with rational coefficients, and degenerate answers are normal here: a
single point, a segment, a ray.
"""

from fractions import Fraction

from castability.direction_space import HalfPlane
from castability.lp2d import feasible_point, intersect_halfplanes

square = [HalfPlane(1, 0, 1), HalfPlane(-1, 0, 1), HalfPlane(0, 1, 1), HalfPlane(0, -1, 1)]
print(intersect_halfplanes(square).kind.value)

# squeeze y to zero: the square collapses to a segment
flat = square[:2] + [HalfPlane(0, 1, 0), HalfPlane(0, -1, 0)]
r = intersect_halfplanes(flat)
print(r.kind.value, r.vertices)

# and x too: a single point
r = intersect_halfplanes(flat + [HalfPlane(1, 0, 0), HalfPlane(-1, 0, 0)])
print(r.kind.value, r.vertices)

# %%
# Open at one side: a wedge is unbounded and reported with its rays.
wedge = intersect_halfplanes([HalfPlane(0, 1, 0), HalfPlane(1, -1, 0)])
print(wedge.kind.value, "apex", wedge.points, "rays", wedge.rays)

# %%
# When only a yes/no answer is needed, the randomized LP is linear time.
# Its infeasibility witness names at most three constraints.
tri = [HalfPlane(1, 0, 0), HalfPlane(0, 1, 0), HalfPlane(-1, -1, Fraction(-1, 2))]
res = feasible_point(tri + square, seed=1)
print("feasible" if res.feasible else f"infeasible, witness {res.witness}")
