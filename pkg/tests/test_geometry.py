from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from geothick.errors import CollinearOverlap, DuplicatePoint
from geothick.geometry import (
    Direction,
    as_rational,
    compare_directions_ccw,
    convex_hull,
    format_rational,
    in_convex_polygon,
    in_general_position,
    line_intersection,
    orient,
    pow2_floor_sqrt,
    rational_unit_vector,
    segment_intersection,
    segments_cross,
    sqrt_lower,
    sqrt_upper,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
points = st.builds(lambda x, y: P(x, y), rationals, rationals)


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == 0
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1


def test_segments_cross_examples():
    assert segments_cross(P(0, 0), P(2, 2), P(0, 2), P(2, 0))
    assert not segments_cross(P(0, 0), P(1, 0), P(2, 0), P(3, 0))
    assert not segments_cross(P(0, 0), P(1, 1), P(1, 1), P(2, 0))


def test_collinear_overlap_is_an_error():
    with pytest.raises(CollinearOverlap):
        segments_cross(P(0, 0), P(2, 0), P(1, 0), P(3, 0))


def test_general_position_examples():
    assert in_general_position([P(0, 0), P(1, 0), P(0, 1)])
    assert not in_general_position([P(0, 0), P(1, 1), P(2, 2), P(5, 0)])
    assert in_general_position([P(0, 0), P(1, 0), P(0, 1), P(1, 1)])
    with pytest.raises(DuplicatePoint):
        in_general_position([P(0, 0), P(0, 0), P(1, 1)])


def test_direction_order_examples():
    assert compare_directions_ccw(Direction(1, 0), Direction(0, 1)) < 0
    assert compare_directions_ccw(Direction(1, 0), Direction(2, 0)) == 0
    assert compare_directions_ccw(Direction(0, -1), Direction(1, 0)) > 0


def test_rational_round_trip_text():
    assert format_rational(Fraction(355, 113)) == "355/113"
    assert format_rational(Fraction(4)) == "4"
    assert as_rational("355/113") == Fraction(355, 113)
    assert as_rational("-7") == -7


def test_segment_intersection_parameter():
    assert segment_intersection(P(0, 0), P(2, 2), P(0, 2), P(2, 0)) == Fraction(1, 2)
    assert line_intersection(P(0, 0), P(2, 2), P(0, 2), P(2, 0)) == P(1, 1)
    with pytest.raises(ValueError):
        line_intersection(P(0, 0), P(1, 0), P(0, 1), P(1, 1))


def test_convex_hull_square_with_interior_point():
    hull = convex_hull([P(0, 0), P(4, 0), P(4, 4), P(0, 4), P(2, 1), P(2, 0)])
    assert set(hull) == {P(0, 0), P(4, 0), P(4, 4), P(0, 4)}
    assert in_convex_polygon(P(2, 1), hull, strict=True)
    assert not in_convex_polygon(P(2, 0), hull, strict=True)
    assert in_convex_polygon(P(2, 0), hull)


def test_sqrt_bounds_bracket_two():
    lo, hi = sqrt_lower(2), sqrt_upper(2)
    assert lo * lo < 2 < hi * hi
    assert hi - lo < Fraction(1, 2**30)


def test_pow2_floor_sqrt():
    for q in (Fraction(1), Fraction(3), Fraction(1, 10), Fraction(1000)):
        r = pow2_floor_sqrt(q)
        assert r * r <= q < 4 * r * r
        assert r.numerator == 1 or r.denominator == 1


def test_rational_unit_vector_is_on_circle():
    for angle in (0.0, 0.3, 1.0, 2.5, 4.0):
        c, s = rational_unit_vector(angle)
        assert c * c + s * s == 1


@given(points, points, points)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(q, p, r) == -orient(p, r, q)


@given(points, points, points, points)
def test_segments_cross_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    try:
        base = segments_cross(a, b, c, d)
    except CollinearOverlap:
        return
    assert segments_cross(c, d, a, b) == base
    assert segments_cross(b, a, c, d) == base
    assert segments_cross(a, b, d, c) == base


@given(points, points, points, points)
def test_segments_cross_matches_orientation_products(a, b, c, d):
    if len({a, b, c, d}) < 4:
        return
    try:
        if not in_general_position([a, b, c, d]):
            return
    except DuplicatePoint:
        return
    separated = orient(a, b, c) * orient(a, b, d) > 0 or orient(c, d, a) * orient(c, d, b) > 0
    assert segments_cross(a, b, c, d) == (not separated)


directions = st.tuples(st.integers(-20, 20), st.integers(-20, 20)).filter(lambda t: t != (0, 0))


@given(st.lists(directions, min_size=1, max_size=8))
def test_direction_order_is_rotation_invariant(vs):
    from functools import cmp_to_key

    ds = [Direction(x, y) for x, y in vs]
    order = sorted(range(len(ds)), key=cmp_to_key(lambda i, j: compare_directions_ccw(ds[i], ds[j])))
    rot = [Direction(-d.dy, d.dx) for d in ds]
    order_rot = sorted(range(len(ds)), key=cmp_to_key(lambda i, j: compare_directions_ccw(rot[i], rot[j])))
    # Same cyclic sequence of direction classes, up to a rotation of the list.
    cls = [ds[i] for i in order]
    cls_rot = [Direction(rot[i].dy, -rot[i].dx) for i in order_rot]
    dedup = lambda xs: [x for k, x in enumerate(xs) if k == 0 or x != xs[k - 1]]
    a, b = dedup(cls), dedup(cls_rot)
    assert len(a) == len(b)
    assert any(a == b[k:] + b[:k] for k in range(len(b)))


@given(directions, directions)
def test_direction_order_total(u, v):
    d1, d2 = Direction(*u), Direction(*v)
    assert compare_directions_ccw(d1, d2) == -compare_directions_ccw(d2, d1)
    assert (compare_directions_ccw(d1, d2) == 0) == (d1 == d2)
