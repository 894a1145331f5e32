import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import corpus
from castability import shapes
from castability.errors import BadFacetId, DegenerateInput, ZeroVector
from castability.kernel import Vec3, cross, dot, primitive
from castability.oracle import (brute_force_top_facets, candidate_directions, check_paired_top_facets,
                                convex_hull, depth, hull_facet_of, is_valid_pair, min_candidate_depth,
                                valid_facet_witnesses)

CUBE_CORNERS = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]


def _top(p):
    return next(i for i in range(p.n_facets) if p.normal(i) == (0, 0, -1))


def test_is_valid_pair_examples():
    cube = shapes.cube()
    top = _top(cube)
    assert is_valid_pair(cube, top, (0, 0, 1))
    assert not is_valid_pair(cube, top, (1, 0, 1))
    for i in range(6):
        inward = cube.normal(i)
        assert not is_valid_pair(cube, i, inward)
    with pytest.raises(ZeroVector):
        is_valid_pair(cube, top, (0, 0, 0))
    with pytest.raises(BadFacetId):
        is_valid_pair(cube, 99, (0, 0, 1))


def test_depth_examples():
    cube = shapes.cube()
    assert depth(cube, (0, 0, 1)) == 1
    assert depth(cube, (1, 1, 1)) == 3
    with pytest.raises(ZeroVector):
        depth(cube, (0, 0, 0))


def test_candidate_directions():
    cube = shapes.cube()
    cands = set(candidate_directions(cube))
    for n in cube.normals:
        assert n in cands and Vec3(*(-c for c in n)) in cands
    assert Vec3(0, 0, 0) not in cands
    pyr = set(candidate_directions(shapes.pyramid()))
    assert Vec3(0, -1, 0) in pyr


def test_brute_force_examples():
    assert brute_force_top_facets(shapes.cube()).facets == tuple(range(6))
    assert len(brute_force_top_facets(shapes.pyramid()).entries) == 5
    notched = shapes.notched_cube()
    valid = set(brute_force_top_facets(notched).facets)
    groove = {f.id for f in notched.facets
              if any(notched.vertices[v].z == 2 for v in f.boundary) and
              all(0 < notched.vertices[v].x < 3 for v in f.boundary)}
    assert groove and not (groove & valid)
    with pytest.raises(ValueError):
        valid_facet_witnesses(shapes.paraboloid(15))


def test_oracle_witnesses_are_valid_and_complete_against_sampling():
    rng = np.random.default_rng(0)
    for p in list(corpus.named_fixtures().values())[:9] + list(corpus.nonconvex_fixtures(12)):
        wit = valid_facet_witnesses(p)
        for i, d in wit.items():
            assert is_valid_pair(p, i, d)
        nrm = np.array([[int(c) for c in n] for n in p.normals])
        dirs = rng.integers(-1000, 1001, size=(4000, 3))
        neg = (dirs @ nrm.T) < 0
        hit = np.flatnonzero(neg.sum(axis=1) == 1)
        sampled = set(np.argmax(neg[hit], axis=1).tolist())
        assert sampled <= set(wit)


@pytest.mark.parametrize("p", [shapes.cube(), shapes.pyramid(), shapes.notched_cube(),
                               shapes.cross_notched_block()] + list(corpus.nonconvex_fixtures(8)))
def test_no_zero_depth_direction(p):
    assert min_candidate_depth(p) >= 1


@settings(max_examples=40)
@given(st.integers(0, 11), st.tuples(*[st.integers(-6, 6)] * 3).filter(lambda v: v != (0, 0, 0)))
def test_valid_pair_iff_depth_one(k, d):
    p = (list(corpus.named_fixtures().values()) + list(corpus.nonconvex_fixtures(2)))[k]
    for i in range(p.n_facets):
        expected = depth(p, d) == 1 and dot(d, p.normal(i)) < 0
        assert is_valid_pair(p, i, d) == expected


def test_convex_hull_examples():
    cube = convex_hull(CUBE_CORNERS)
    assert cube.n_facets == 6 and len(cube.vertices) == 8
    h = convex_hull(CUBE_CORNERS + [(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))])
    assert h.n_facets == 6 and len(h.vertices) == 8
    notched = shapes.notched_cube()
    h = convex_hull(notched.vertices)
    assert h.n_facets == 6 and len(h.vertices) == 8
    # points on edges and faces are not hull vertices
    h = convex_hull(CUBE_CORNERS + [(Fraction(1, 2), 0, 0), (Fraction(1, 2), Fraction(1, 2), 1)])
    assert h.n_facets == 6 and len(h.vertices) == 8
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (2, 3, 0)])
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0, 0), (1, 1, 1), (2, 2, 2), (3, 3, 3)])


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.integers(4, 60))
def test_convex_hull_contains_all_points(seed, n):
    rng = random.Random(seed)
    pts = corpus.random_hull_points(rng, n)
    try:
        h = convex_hull(pts, seed=seed)
    except DegenerateInput:
        return
    assert h.euler_characteristic() == 2
    for f in h.facets:
        off = dot(f.inward_normal, h.vertices[f.boundary[0]])
        assert all(dot(f.inward_normal, Vec3.of(*q)) >= off for q in pts)
    # every hull vertex is an input point
    inputs = {tuple(Fraction(c) for c in q) for q in pts}
    assert all(tuple(Fraction(c) for c in v) in inputs for v in h.vertices)


def test_hull_facet_lookup():
    p = shapes.notched_cube()
    h = convex_hull(p.vertices)
    bottom = next(f.id for f in p.facets if f.inward_normal == (0, 0, 1))
    j = hull_facet_of(h, p, bottom)
    assert j is not None and h.normal(j) == (0, 0, 1)
    groove_floor = next(f.id for f in p.facets
                        if f.inward_normal == (0, 0, -1) and p.vertices[f.boundary[0]].z == 2)
    assert hull_facet_of(h, p, groove_floor) is None


def test_paired_top_facets_examples():
    assert check_paired_top_facets(shapes.cube())
    assert check_paired_top_facets(shapes.pyramid())
