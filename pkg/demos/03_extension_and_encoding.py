"""Walkthrough: extending a partial drawing, and the polynomial encoding of layered drawings.

Run with ``python3 demos/03_extension_and_encoding.py``.  The solver step needs a
``z3`` binary on PATH and is skipped otherwise.
"""

from __future__ import annotations

import shutil
from itertools import combinations

from geothick.drawing import Graph, LayeredDrawing
from geothick.etr import build_formula, drawing_assignment, emit_smtlib, evaluate, specialize_for_extension
from geothick.geometry import Point
from geothick.gte import GteInstance, brute_force_gte_edges, solve_gte_edges
from geothick.smt import solve_external


def main() -> None:
    # K5 with vertex 4 inside the triangle 0-1-2; the outer cycle is predrawn in layer 1
    # and the five remaining edges must be colored with two layers.
    k5 = Graph.from_edges(combinations(range(5), 2))
    gamma = {0: Point(0, 0), 1: Point(12, 0), 2: Point(6, 10), 3: Point(6, -4), 4: Point(5, 3)}
    outer = Graph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)], 5)
    inst = GteInstance(k5, LayeredDrawing(outer, gamma, {e: 1 for e in outer.edges}, 2))
    print(
        f"Extension instance: {inst.graph.n} vertices, {inst.graph.m} edges, "
        f"{len(inst.missing_edges)} missing edge(s), {inst.layers} layer(s)"
    )
    chi = solve_gte_edges(inst)
    print(f"  branching solver: {'SAT' if chi else 'UNSAT'}; enumeration agrees: {(chi is None) == (brute_force_gte_edges(inst) is None)}")

    f = build_formula(inst.graph, inst.layers)
    print(f"Encoding of the whole graph: {len(f.variables)} variables, {len(f.conjuncts)} conjuncts, degree {f.max_degree()}")
    if chi is not None:
        print(f"  the completed drawing satisfies it: {evaluate(f, drawing_assignment(inst.completed(chi)))}")

    spec = specialize_for_extension(f, inst)
    script = emit_smtlib(spec)
    print(f"Encoding with the predrawn part fixed: {len(spec.variables)} free variables, {len(script)} bytes of SMT-LIB")
    z3 = shutil.which("z3")
    if z3 is None:
        print("  no z3 on PATH, skipping the solver call")
        return
    res = solve_external(script, spec, z3, 30)
    print(f"  z3 says {res.status}")


if __name__ == "__main__":
    main()
