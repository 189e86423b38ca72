from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P, random_general_position, random_graph
from geothick.clone import (
    AngularDomain,
    HalfPlane,
    TieShape,
    admissible_region,
    can_clone_in_cell,
    cell_contains,
    cell_of,
    insert_clone,
    tie_contains,
)
from geothick.drawing import Graph, LayeredDrawing, min_layers_fixed_drawing, validate
from geothick.errors import ApexQuery, CollinearOverlap, DegenerateGeometry, NotCloneable
from geothick.geometry import Direction, orient, segments_cross
from geothick.kernel_vc import approx_vertex_cover

ORIGIN = P(0, 0)
QUADRANT = TieShape(ORIGIN, Direction(1, 0), Direction(0, 1))


def star(points: list, colors: list[int], layers: int = 2) -> LayeredDrawing:
    g = Graph.from_edges([(0, i + 1) for i in range(len(points))])
    gamma = {0: ORIGIN, **{i + 1: p for i, p in enumerate(points)}}
    chi = {(0, i + 1): c for i, c in enumerate(colors)}
    return LayeredDrawing(g, gamma, chi, layers)


def test_tie_contains_examples():
    assert tie_contains(QUADRANT, P(1, 1))
    assert tie_contains(QUADRANT, P(-1, -1))
    assert not tie_contains(QUADRANT, P(1, -1))
    with pytest.raises(ApexQuery):
        tie_contains(QUADRANT, ORIGIN)


def test_cell_examples():
    gamma = {0: P(0, 0), 1: P(4, 0), 2: P(2, 4), 3: P(2, 1), 4: P(2, -3)}
    one_line = cell_of(gamma, [0, 1], 3)
    assert cell_contains(one_line, gamma[3]) and cell_contains(one_line, P(100, 50))
    assert not cell_contains(one_line, gamma[4])
    tri = cell_of(gamma, [0, 1, 2], 3)
    assert cell_contains(tri, gamma[3])
    assert cell_contains(tri, P(1, 1))
    assert not cell_contains(tri, P(10, 10))


def test_admissible_region_examples():
    d = star([P(1, 0), P(0, 1)], [1, 2])
    assert admissible_region(d, 0).full
    d = star([P(1, 0), P(0, 1)], [1, 1])
    dom = admissible_region(d, 0)
    for x in range(-6, 7):
        for y in range(-6, 7):
            if (x, y) != (0, 0) and x * y != 0:
                assert dom.contains(P(x, y)) == tie_contains(QUADRANT, P(x, y))


def test_three_edge_region_matches_sampling():
    pts = [P(1, 0), P(0, 1), P(-1, 1)]
    d = star(pts, [1, 1, 1])
    dom = admissible_region(d, 0)
    ties = [TieShape(ORIGIN, Direction.between(ORIGIN, a), Direction.between(ORIGIN, b))
            for i, a in enumerate(pts) for b in pts[i + 1:]]
    # 360 rational directions from Pythagorean-style parametrisation of the circle.
    for k in range(360):
        t = Fraction(k - 180, 37)
        w = Direction(1 - t * t, 2 * t) if k % 2 else Direction(2 * t, 1 - t * t)
        if any(orient(ORIGIN, p, w.as_point()) == 0 for p in pts):
            continue
        assert dom.contains_direction(w) == all(t_.contains_direction(w) for t_ in ties)
    # (0,1) lies between the other two rays, so two of the ties only share a boundary ray.
    assert dom.is_empty


def test_two_color_classes_intersect():
    pts = [P(2, 0), P(1, 2), P(3, 3), P(-1, -3)]
    dom = admissible_region(star(pts, [1, 1, 2, 2]), 0)
    assert not dom.is_empty
    assert dom.contains(P(3, 1)) and dom.contains(P(-3, -1))
    assert not dom.contains(P(2, 3))
    assert not dom.contains(P(-1, 1))


def test_empty_region_refuted_by_grid_search():
    pts = [P(1, 0), P(0, 1), P(-1, -1)]
    d = star(pts, [1, 1, 1], layers=1)
    assert not can_clone_in_cell(d, [1, 2, 3], 0)
    with pytest.raises(NotCloneable):
        insert_clone(d, [1, 2, 3], 0, 99)
    cell = cell_of(d.gamma, [1, 2, 3], 0)
    g2 = d.graph.add([9], [(9, 1), (9, 2), (9, 3)])
    tried = 0
    for i in range(-20, 21):
        for j in range(-20, 21):
            p = P(Fraction(i, 20), Fraction(j, 20))
            if p in d.gamma.values() or not cell_contains(cell, p):
                continue
            gamma = {**d.gamma, 9: p}
            cand = LayeredDrawing(g2, gamma, {e: 1 for e in g2.edges}, 1)
            try:
                assert not validate(cand).is_empty
            except (DegenerateGeometry, CollinearOverlap):
                pass
            tried += 1
    assert tried > 100


def test_clone_leaf_and_degree_two():
    d = star([P(3, 0), P(0, 3), P(-2, -1)], [1, 1, 2])
    for v in (1, 3):
        out = insert_clone(d, [0], v, 10)
        assert validate(out).is_empty
        assert out.graph.neighbors(10) == d.graph.neighbors(v)
    g = Graph.from_edges([(0, 2), (1, 2), (0, 3), (1, 3)])
    d = LayeredDrawing(g, {0: P(0, 0), 1: P(6, 0), 2: P(3, 2), 3: P(3, -2)}, {e: 1 for e in g.edges}, 1)
    out = insert_clone(d, [0, 1], 2, 4)
    assert validate(out).is_empty
    assert out.chi[(0, 4)] == 1 and out.chi[(1, 4)] == 1
    assert cell_contains(cell_of(d.gamma, [0, 1], 2), out.gamma[4])
    assert out.restrict(d.graph.vertices) == d


def _domain_from(seed: int) -> AngularDomain:
    rng = random.Random(seed)
    a = Direction(rng.randint(-9, 9) or 1, rng.randint(-9, 9))
    b = Direction(rng.randint(-9, 9), rng.randint(-9, 9) or 1)
    if a.dx * b.dy - a.dy * b.dx == 0:
        return AngularDomain.whole(ORIGIN)
    return AngularDomain.from_tie(TieShape(ORIGIN, a, b))


PROBES = [Direction(x, y) for x in range(-13, 14) for y in range(-13, 14) if (x, y) != (0, 0)]


def _same(a: AngularDomain, b: AngularDomain) -> bool:
    probes = PROBES + [d for iv in a.intervals + b.intervals for d in iv]
    return all(a.contains_direction(w) == b.contains_direction(w) for w in probes)


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_domain_intersection_laws(s1, s2, s3):
    A, B, C = _domain_from(s1), _domain_from(s2), _domain_from(s3)
    full = AngularDomain.whole(ORIGIN)
    assert _same(A.intersect(B), B.intersect(A))
    assert _same(A.intersect(B).intersect(C), A.intersect(B.intersect(C)))
    assert _same(A.intersect(A), A)
    assert _same(A.intersect(full), A)
    AB = A.intersect(B)
    for w in PROBES:
        assert AB.contains_direction(w) == AB.contains_direction(-w)


@given(st.integers(0, 10**6))
def test_clone_pair_rule(seed):
    """A clone at p avoids crossings with two same-colored edges iff p is in their tie or beyond ab."""
    rng = random.Random(seed)
    gamma = random_general_position(4, rng, size=40)
    v, a, b, p = gamma[0], gamma[1], gamma[2], gamma[3]
    tie = TieShape(v, Direction.between(v, a), Direction.between(v, b))
    beyond = HalfPlane(a, b, v).contains(p)
    try:
        clash = segments_cross(v, a, p, b) or segments_cross(v, b, p, a)
    except CollinearOverlap:
        return
    assert (not clash) == (tie_contains(tie, p) or beyond)


@given(st.integers(0, 10**6))
def test_cloneable_vertices_clone_validly(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 7)
    g = random_graph(n, 0.5, rng)
    gamma = random_general_position(n, rng)
    layers, chi = min_layers_fixed_drawing(g, gamma)
    d = LayeredDrawing(g, gamma, chi, layers)
    S = approx_vertex_cover(g)
    for v in sorted(g.vertices - S):
        if can_clone_in_cell(d, S, v):
            out = insert_clone(d, S, v, 100)
            assert validate(out).is_empty
            assert out.restrict(g.vertices) == d
