"""Drawing extension with missing edges, exhaustive oracles and a small-instance decider."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .config import RunConfig
from .drawing import (
    Edge,
    Graph,
    LayeredDrawing,
    check_no_vertex_on_edge,
    edge,
    perturb_to_general_position,
    validate,
)
from .errors import OracleBudgetExceeded, VerticesMissing
from .geometry import integer_grid
from .search import edge_count_refutes, find_drawing, planar_drawing


@dataclass(frozen=True)
class GteInstance:
    """A target graph together with a predrawn, validly layered subgraph."""

    graph: Graph
    predrawn: LayeredDrawing

    def __post_init__(self):
        h = self.predrawn.graph
        if not h.vertices <= self.graph.vertices or not h.edges <= self.graph.edges:
            raise ValueError("predrawn graph must be a subgraph of the target graph")

    @property
    def layers(self) -> int:
        return self.predrawn.layers

    @property
    def missing_vertices(self) -> list[int]:
        return sorted(self.graph.vertices - self.predrawn.graph.vertices)

    @property
    def missing_edges(self) -> list[Edge]:
        return sorted(self.graph.edges - self.predrawn.graph.edges)

    def completed(self, chi_new: Mapping[Edge, int], gamma_new: Mapping | None = None) -> LayeredDrawing:
        """The full drawing obtained from colors (and positions) of the missing parts."""
        gamma = dict(self.predrawn.gamma)
        if gamma_new:
            gamma.update(gamma_new)
        chi = dict(self.predrawn.chi)
        chi.update({edge(*e): c for e, c in chi_new.items()})
        return LayeredDrawing(self.graph, gamma, chi, self.layers)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _cross(a, b, c, d) -> bool:
    o = lambda p, q, r: _sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
    return o(a, b, c) * o(a, b, d) < 0 and o(c, d, a) * o(c, d, b) < 0


def _grid(inst: GteInstance) -> dict[int, tuple[int, int]]:
    verts = sorted(inst.predrawn.gamma)
    return dict(zip(verts, integer_grid([inst.predrawn.gamma[v] for v in verts])))


def _require_all_drawn(inst: GteInstance) -> None:
    if inst.missing_vertices:
        raise VerticesMissing(f"undrawn vertices: {inst.missing_vertices}")


def feasible_colors(inst: GteInstance, e: Edge, _grid_cache=None) -> set[int]:
    """Colors c such that the segment of e crosses no predrawn edge of color c."""
    _require_all_drawn(inst)
    u, v = edge(*e)
    grid = _grid_cache or _grid(inst)
    a, b = grid[u], grid[v]
    check_no_vertex_on_edge(Graph(inst.predrawn.graph.vertices, [(u, v)]), inst.predrawn.gamma)
    blocked = set()
    for f, c in inst.predrawn.chi.items():
        if c in blocked or u in f or v in f:
            continue
        if _cross(a, b, grid[f[0]], grid[f[1]]):
            blocked.add(c)
    return set(range(1, inst.layers + 1)) - blocked


def feasible_color_table(inst: GteInstance) -> dict[Edge, set[int]]:
    grid = _grid(inst)
    return {e: feasible_colors(inst, e, grid) for e in inst.missing_edges}


def solve_gte_edges(inst: GteInstance) -> dict[Edge, int] | None:
    """Color the missing edges so the full drawing is valid, or return None.

    Edges with fewer than k feasible colors (k = number of missing edges) are
    branched on.  Each remaining edge can be colored greedily afterwards since
    at most k - 1 other new edges can conflict with it.
    """
    _require_all_drawn(inst)
    missing = inst.missing_edges
    k = len(missing)
    if k == 0:
        return dict(inst.predrawn.chi)
    grid = _grid(inst)
    table = {e: feasible_colors(inst, e, grid) for e in missing}
    conflicts: dict[Edge, set[Edge]] = {e: set() for e in missing}
    for i, e in enumerate(missing):
        for f in missing[i + 1 :]:
            if set(e) & set(f):
                continue
            if _cross(grid[e[0]], grid[e[1]], grid[f[0]], grid[f[1]]):
                conflicts[e].add(f)
                conflicts[f].add(e)
    branch = [e for e in missing if len(table[e]) < k]
    greedy = sorted((e for e in missing if len(table[e]) >= k), key=lambda e: (len(table[e]), e))
    for e in greedy:
        assert len(table[e]) >= k
    choices = [sorted(table[e]) for e in branch]
    for combo in product(*choices):
        chosen = dict(zip(branch, combo))
        if any(chosen[f] == c for e, c in chosen.items() for f in conflicts[e] if f in chosen):
            continue
        for e in greedy:
            used = {chosen[f] for f in conflicts[e] if f in chosen}
            c = min(table[e] - used)
            chosen[e] = c
        result = dict(inst.predrawn.chi)
        result.update(chosen)
        return result
    return None


def brute_force_gte_edges(inst: GteInstance, budget: int = 10**6) -> dict[Edge, int] | None:
    """Try all colorings of the missing edges and validate each full drawing."""
    _require_all_drawn(inst)
    missing = inst.missing_edges
    ell = inst.layers
    if ell ** len(missing) > budget:
        raise OracleBudgetExceeded(f"{ell}^{len(missing)} colorings exceed budget {budget}")
    for combo in product(range(1, ell + 1), repeat=len(missing)):
        d = inst.completed(dict(zip(missing, combo)))
        if validate(d).is_empty:
            return dict(d.chi)
    return None


@dataclass
class GtDecision:
    verdict: str  # "SAT", "UNSAT" or "UNKNOWN"
    drawing: LayeredDrawing | None = None
    method: str = ""


def decide_gt_small(g: Graph, layers: int, config: RunConfig | None = None) -> GtDecision:
    """Decide whether g has a straight-line drawing with ``layers`` plane layers.

    One layer is decided exactly by planarity.  Otherwise a placement search
    looks for a witness, edge-count bounds give cheap refutations, and an
    external solver on the polynomial encoding is the last resort.
    """
    config = config or RunConfig()
    if layers < 1:
        raise ValueError("layers must be positive")
    if g.m > config.max_coloring_edges:
        raise OracleBudgetExceeded(f"{g.m} edges exceed the configured bound")
    if g.m == 0 or layers >= g.m:
        # Any placement works: at most m colors are ever needed.
        d = find_drawing(g, layers, 1, config.seed, config.max_coloring_edges)
        assert d is not None
        return GtDecision("SAT", d, "trivial")
    if layers == 1:
        d = planar_drawing(g, config.seed)
        if d is None:
            return GtDecision("UNSAT", None, "planarity")
        return GtDecision("SAT", d, "planarity")
    if edge_count_refutes(g, layers):
        return GtDecision("UNSAT", None, "edge-count")
    d = find_drawing(g, layers, config.placement_budget, config.seed, config.max_coloring_edges)
    if d is not None:
        return GtDecision("SAT", d, "placement")
    if config.solver:
        from .etr import build_formula, emit_smtlib
        from .smt import solve_external

        f = build_formula(g, layers)
        res = solve_external(emit_smtlib(f), f, config.solver, config.solver_timeout)
        if res.status == "sat":
            d = f.decode_drawing(res.model, layers)
            d = perturb_to_general_position(d, config.seed)
            return GtDecision("SAT", d, "solver")
        if res.status == "unsat":
            return GtDecision("UNSAT", None, "solver")
    return GtDecision("UNKNOWN", None, "budget")

