from __future__ import annotations

import random
import shutil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, convex_k4, random_general_position, random_graph, random_gte_instance
from geothick.drawing import Graph, LayeredDrawing, validate
from geothick.errors import SolverUnavailable
from geothick.etr import (
    build_formula,
    drawing_assignment,
    emit_smtlib,
    evaluate,
    formula_sexprs,
    specialize_for_extension,
)
from geothick.geometry import in_general_position, orient
from geothick.gte import GteInstance, solve_gte_edges
from geothick.smt import parse_sexprs, solve_external

Z3 = shutil.which("z3")
needs_z3 = pytest.mark.skipif(Z3 is None, reason="no z3 binary on PATH")
TRIANGLE = Graph.from_edges([(0, 1), (1, 2), (0, 2)])


def forced_crossing_toy() -> GteInstance:
    """One layer, convex K4 predrawn without a diagonal; that diagonal must cross the other."""
    d = convex_k4((1, 1))
    h = d.graph.remove_edges([(0, 2)])
    return GteInstance(d.graph, LayeredDrawing(h, d.gamma, {e: 1 for e in h.edges}, 1))


def test_triangle_counts():
    f = build_formula(TRIANGLE, 1)
    assert len(f.variables) == 9
    assert (f.count("F1"), f.count("F2"), f.count("F3")) == (1, 3, 0)


def test_many_layers_trivially_true():
    f = build_formula(TRIANGLE, 4)
    assert f.trivially_true and f.conjuncts == []
    assert build_formula(TRIANGLE, 3).trivially_true is False


def test_disjoint_edges_single_implication():
    g = Graph.from_edges([(0, 1), (2, 3)])
    f = build_formula(g, 1)
    assert f.count("F3") == 1
    assert len(f.variables) == 2 * 4 + 2


def test_evaluate_examples():
    good, bad = convex_k4((1, 2)), convex_k4((1, 1)).with_layers(2)
    f = build_formula(good.graph, 2)
    assert evaluate(f, drawing_assignment(good))
    assert not evaluate(f, drawing_assignment(bad))
    g = Graph.from_edges([(0, 1), (1, 2)])
    col = LayeredDrawing(g, {0: P(0, 0), 1: P(1, 1), 2: P(2, 2)}, {(0, 1): 1, (1, 2): 1}, 1)
    assert not evaluate(build_formula(g, 1), drawing_assignment(col))


def test_specialize_free_counts():
    d = convex_k4((1, 2))
    full = GteInstance(d.graph, d)
    f = specialize_for_extension(build_formula(d.graph, 2), full)
    assert f.variables == [] and f.conjuncts == []
    h = d.graph.remove_edges([(0, 2)])
    one = GteInstance(d.graph, LayeredDrawing(h, d.gamma, {e: d.chi[e] for e in h.edges}, 2))
    f = specialize_for_extension(build_formula(d.graph, 2), one)
    assert f.variables == ["c_0_2"]


def test_specialize_drops_collinear_single_free_vertex():
    # Drawn vertices 0,1,2 are collinear; 3 is missing and adjacent to all of them.
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (0, 3), (1, 3), (0, 4)])
    gamma = {0: P(0, 0), 1: P(1, 0), 2: P(2, 0), 4: P(0, 5)}
    h = Graph([0, 1, 2, 4], [(0, 1), (1, 2), (0, 4)])
    inst = GteInstance(g, LayeredDrawing(h, gamma, {e: 1 for e in h.edges}, 2))
    base = build_formula(g, 2)
    spec = specialize_for_extension(base, inst)
    assert len(spec.variables) == 2 * 1 + 3
    dropped = 0
    for c in base.conjuncts:
        if c.kind != "F3":
            continue
        free = [v for v in c.vertices if v not in gamma]
        drawn = [gamma[v] for v in c.vertices if v in gamma]
        if len(free) == 1 and orient(*drawn) == 0:
            dropped += 1
    kept = sum(1 for c in spec.conjuncts if c.kind == "F3")
    candidates = sum(1 for c in base.conjuncts if c.kind == "F3" and any(v not in gamma for v in c.vertices))
    assert dropped > 0
    assert kept <= candidates - dropped


def test_emit_parses_back():
    f = build_formula(TRIANGLE, 1)
    text = emit_smtlib(f)
    assert text == emit_smtlib(build_formula(TRIANGLE, 1))
    assert parse_sexprs(text) == formula_sexprs(f)
    decls = [s for s in parse_sexprs(text) if s[0] in ("declare-fun", "declare-const")]
    assert len(decls) == 9
    assert "(check-sat)" in text
    assert "(get-model)" in text or "(get-value" in text


def test_solver_missing():
    with pytest.raises(SolverUnavailable):
        solve_external("(check-sat)", None, None)
    with pytest.raises(SolverUnavailable):
        solve_external("(check-sat)", None, "/nonexistent/solver-binary")


@needs_z3
def test_solver_examples():
    f = build_formula(TRIANGLE, 4)
    assert solve_external(emit_smtlib(f), f, Z3, 30).status == "sat"
    toy = forced_crossing_toy()
    g = specialize_for_extension(build_formula(toy.graph, 1), toy)
    assert solve_external(emit_smtlib(g), g, Z3, 30).status == "unsat"
    assert solve_external(emit_smtlib(g), g, Z3, 0).status == "unknown"


@needs_z3
def test_solver_model_is_valid_drawing():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    f = build_formula(g, 1)
    res = solve_external(emit_smtlib(f), f, Z3, 60)
    assert res.status == "sat"
    d = f.decode_drawing(res.model)
    assert validate(d).is_empty and in_general_position(d.gamma.values())


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_formula_agrees_with_validator(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    g = random_graph(n, 0.5, rng)
    if g.m == 0:
        return
    layers = rng.randint(1, min(3, g.m))
    if rng.random() < 0.7:
        gamma = random_general_position(n, rng, size=12)
    else:
        gamma = dict(enumerate(rng.sample([P(x, y) for x in range(4) for y in range(4)], n)))
    d = LayeredDrawing(g, gamma, {e: rng.randint(1, layers) for e in g.edges}, layers)
    f = build_formula(g, layers)
    assert len(f.variables) == 2 * g.n + g.m
    assert f.max_degree() <= 6
    general = in_general_position(gamma.values())
    expected = general and validate(d).is_empty
    assert evaluate(f, drawing_assignment(d)) == expected


@needs_z3
@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_specialized_solver_matches_branching(seed):
    inst = random_gte_instance(random.Random(seed))
    f = specialize_for_extension(build_formula(inst.graph, inst.layers), inst)
    res = solve_external(emit_smtlib(f), f, Z3, 60)
    assert res.status == ("unsat" if solve_gte_edges(inst) is None else "sat")

