from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, random_gte_instance as random_instance
from geothick.config import RunConfig
from geothick.drawing import Graph, LayeredDrawing, validate
from geothick.errors import OracleBudgetExceeded, VerticesMissing
from geothick.gte import (
    GteInstance,
    brute_force_gte_edges,
    decide_gt_small,
    feasible_color_table,
    feasible_colors,
    solve_gte_edges,
)

CFG = RunConfig(solver=None, placement_budget=200)
SQUARE = {0: P(0, 0), 1: P(4, 0), 2: P(4, 4), 3: P(0, 4)}
K4 = Graph.from_edges([(u, v) for u in range(4) for v in range(u + 1, 4)])


def k4_instance(predrawn_edges: dict, layers: int) -> GteInstance:
    h = Graph(range(4), predrawn_edges)
    return GteInstance(K4, LayeredDrawing(h, SQUARE, predrawn_edges, layers))


def test_feasible_colors_examples():
    square = {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1}
    assert feasible_colors(k4_instance(square, 3), (0, 2)) == {1, 2, 3}
    inst = k4_instance({**square, (1, 3): 2}, 3)
    assert feasible_colors(inst, (0, 2)) == {1, 3}
    g = Graph.from_edges([(0, 2), (1, 3), (4, 5)])
    gamma = {0: P(0, 0), 2: P(4, 4), 1: P(4, 0), 3: P(0, 4), 4: P(1, 2), 5: P(Fraction(7, 2), 3)}
    h = Graph(range(6), [(0, 2), (1, 3)])
    inst = GteInstance(g, LayeredDrawing(h, gamma, {(0, 2): 1, (1, 3): 2}, 2))
    assert feasible_colors(inst, (4, 5)) == set()


def test_solve_examples():
    square = {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1}
    inst = k4_instance({**square, (1, 3): 1}, 2)
    chi = solve_gte_edges(inst)
    assert chi[(0, 2)] == 2 and all(chi[e] == c for e, c in inst.predrawn.chi.items())
    assert solve_gte_edges(k4_instance({**square, (1, 3): 1}, 1)) is None
    chi = solve_gte_edges(k4_instance(square, 2))
    assert {chi[(0, 2)], chi[(1, 3)]} == {1, 2}


def test_solve_requires_drawn_vertices():
    h = Graph(range(3), [(0, 1)])
    inst = GteInstance(K4, LayeredDrawing(h, {0: P(0, 0), 1: P(1, 0), 2: P(0, 1)}, {(0, 1): 1}, 2))
    with pytest.raises(VerticesMissing):
        solve_gte_edges(inst)


def test_brute_force_examples():
    square = {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1}
    full = {**square, (0, 2): 1, (1, 3): 2}
    assert brute_force_gte_edges(k4_instance(full, 2)) == full
    with pytest.raises(OracleBudgetExceeded):
        brute_force_gte_edges(k4_instance(square, 3), budget=5)


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_branching_agrees_with_enumeration(seed):
    inst = random_instance(random.Random(seed))
    fast, slow = solve_gte_edges(inst), brute_force_gte_edges(inst)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert validate(inst.completed(fast)).is_empty


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_feasible_colors_antitone(seed):
    rng = random.Random(seed)
    inst = random_instance(rng)
    h = inst.predrawn
    if h.graph.m == 0:
        return
    drop = rng.choice(h.graph.sorted_edges())
    smaller = h.graph.remove_edges([drop])
    inst2 = GteInstance(inst.graph, LayeredDrawing(smaller, h.gamma, {e: h.chi[e] for e in smaller.edges}, h.layers))
    t1 = feasible_color_table(inst)
    for e, cols in t1.items():
        assert cols <= feasible_colors(inst2, e)


def test_decide_examples():
    assert decide_gt_small(K4, 1, CFG).verdict == "SAT"
    k5 = Graph.from_edges([(u, v) for u in range(5) for v in range(u + 1, 5)])
    assert decide_gt_small(k5, 1, CFG).verdict == "UNSAT"
    res = decide_gt_small(k5, 2, CFG)
    assert res.verdict == "SAT" and validate(res.drawing).is_empty
    assert res.drawing.graph == k5 and res.drawing.layers == 2


def test_decide_budget():
    k12 = Graph.from_edges([(u, v) for u in range(12) for v in range(u + 1, 12)])
    with pytest.raises(OracleBudgetExceeded):
        decide_gt_small(k12, 2, RunConfig(max_coloring_edges=30))
