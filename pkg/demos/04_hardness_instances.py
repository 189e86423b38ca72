"""Walkthrough: generating extension instances from clique and 3-SAT inputs.

Run with ``python3 demos/04_hardness_instances.py``.
"""

from __future__ import annotations

from itertools import combinations

from geothick.drawing import Graph, validate
from geothick.reductions.sat3 import Cnf, gen_np_instance
from geothick.reductions.verify import verify_gadget_properties
from geothick.reductions.w1 import gen_w1_instance


def clique_instance() -> None:
    parts = [[0, 1], [2, 3], [4, 5]]
    X = Graph.from_edges([(u, v) for a, b in combinations(parts, 2) for u in a for v in b], 6)
    hi = gen_w1_instance(X, parts, 3)
    inst = hi.instance
    print(f"Multicolored clique, 3 parts of 2: {inst.graph.n} vertices, {inst.layers} layers")
    print(f"  {len(inst.missing_vertices)} missing vertices, {len(inst.missing_edges)} missing edges; expected {hi.expected} ({hi.certainty})")
    print(f"  predrawn part valid: {validate(inst.predrawn).is_empty}; clique witness valid: {validate(hi.witness_drawing()).is_empty}")
    rep = verify_gadget_properties(hi, 100)
    print("  gadget self-checks: " + ", ".join(f"{k}={'pass' if v else 'fail'}" for k, v in rep.checks.items()))


def sat_instance() -> None:
    for cnf in (Cnf(3, ((1, 2, 3),)), Cnf(3, ((1, 2, 3), (-1, -2, -3), (1, -2, 3)))):
        hi = gen_np_instance(cnf)
        inst = hi.instance
        print(f"3-SAT with {cnf.num_vars} variables, {len(cnf.clauses)} clause(s): {inst.graph.n} vertices, {inst.layers} layers")
        print(f"  expected {hi.expected} ({hi.certainty}); witness valid: {validate(hi.witness_drawing()).is_empty}")


if __name__ == "__main__":
    clique_instance()
    sat_instance()
