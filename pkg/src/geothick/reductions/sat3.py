"""Extension instances with two missing vertices encoding 3-SAT.

Variable vertices sit on the bottom side of a 10x10 square and clause
vertices on its left side.  Two single-choice gadgets pin the truth vertex
t near the middle of the top side and the verification vertex v near the
middle of the right side.  Nested colored triangles around every variable
and clause vertex leave exactly its allowed colors open; every t-edge
crosses every v-edge, so the two stars must use disjoint colors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from ..drawing import Edge, edge
from ..errors import MalformedClause, ParameterOutOfRange
from ..geometry import Point
from .gadget import build_choice_gadget
from .instance import RED, DrawingBuilder, HardnessInstance, add_blocking_triangles, blocking_radius

SIDE = Fraction(10)
EPS = Fraction(1, 2)


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]


def literal_color(lit: int) -> int:
    """Color of a literal: x_i -> 2i, not x_i -> 2i + 1 (red is 1)."""
    return 2 * abs(lit) + (0 if lit > 0 else 1)


def check_cnf(cnf: Cnf) -> None:
    if cnf.num_vars < 1:
        raise MalformedClause("a formula needs at least one variable")
    for idx, cl in enumerate(cnf.clauses):
        if len(cl) != 3:
            raise MalformedClause(f"clause {idx + 1} has {len(cl)} literals, expected 3")
        if any(lit == 0 or abs(lit) > cnf.num_vars for lit in cl):
            raise MalformedClause(f"clause {idx + 1} uses a literal outside 1..{cnf.num_vars}")
        if len({abs(lit) for lit in cl}) != 3:
            raise MalformedClause(f"clause {idx + 1} repeats a variable")


def satisfying_assignment(cnf: Cnf, max_vars: int = 20) -> dict[int, bool] | None:
    """Exhaustive search; raises ParameterOutOfRange above ``max_vars`` variables."""
    if cnf.num_vars > max_vars:
        raise ParameterOutOfRange(f"{cnf.num_vars} variables exceed the exhaustive limit {max_vars}")
    for bits in product((True, False), repeat=cnf.num_vars):
        sigma = {i + 1: b for i, b in enumerate(bits)}
        if all(any(sigma[abs(lit)] == (lit > 0) for lit in cl) for cl in cnf.clauses):
            return sigma
    return None


def _top(p: Point) -> Point:
    return Point(SIDE / 2 - p.x, SIDE - p.y)


def _right(p: Point) -> Point:
    return Point(SIDE - p.y, SIDE / 2 + p.x)


def gen_np_instance(cnf: Cnf) -> HardnessInstance:
    check_cnf(cnf)
    n, m = cnf.num_vars, len(cnf.clauses)
    layers = 2 * n + 1
    base = build_choice_gadget(0, [1], 1, EPS, polygon_sides=4)
    g_t, g_v = base.mapped(_top), base.mapped(_right)
    g_v = replace(g_v, index=1)
    b = DrawingBuilder()
    anchor_ids = []
    for name, g in (("gt", g_t), ("gv", g_v)):
        ids = {nm: b.vertex(f"{name}.{nm}", p) for nm, p in sorted(g.points.items())}
        for u, v in g.red_edges():
            b.add_edge(ids[u], ids[v], RED)
        anchor_ids.append({nm: b.vertex(f"{name}.{nm}", p) for nm, p in sorted(g.anchors.items())})
    gadget_vertices = sorted(b.gamma)
    xs = [b.vertex(f"x{i}", Point(SIDE * i / (n + 1), 0)) for i in range(1, n + 1)]
    cs = [b.vertex(f"c{j}", Point(0, SIDE * j / (m + 1))) for j in range(1, m + 1)]
    m_t, m_v = g_t.middle[0], g_v.middle[0]

    allowed: dict[int, set[int]] = {}
    for i, x in enumerate(xs, start=1):
        allowed[x] = {literal_color(i), literal_color(-i)}
    for cl, c in zip(cnf.clauses, cs):
        allowed[c] = {literal_color(-lit) for lit in cl}
    everyone = list(range(1, layers + 1))
    cones = {w: [(b.gamma[w], m_t), (b.gamma[w], m_v)] for w in xs + cs}

    for g, ids in zip((g_t, g_v), anchor_ids):
        for nm in ("a_d", "a_l", "a_r"):
            tunnels = [seg for segs in cones.values() for seg in segs]
            r = blocking_radius(b, g.anchors[nm], tunnels, EPS)
            add_blocking_triangles(b, ids[nm], everyone[1:], r, [g.middle[0] - g.anchors[nm]], b.labels[ids[nm]])
    for w in xs + cs:
        p = b.gamma[w]
        tunnels = [seg for u, segs in cones.items() if u != w for seg in segs]
        r = blocking_radius(b, p, tunnels, EPS)
        target = m_t if w in xs else m_v
        blocked = [c for c in everyone if c not in allowed[w]]
        add_blocking_triangles(b, w, blocked, r, [target - p], b.labels[w])

    t = b.vertex("t", None)
    v = b.vertex("v", None)
    for nm in ("a_d", "a_l", "a_r"):
        b.add_edge(t, anchor_ids[0][nm], None)
        b.add_edge(v, anchor_ids[1][nm], None)
    for x in xs:
        b.add_edge(t, x, None)
    for c in cs:
        b.add_edge(v, c, None)
    inst = b.gte(layers)

    try:
        sigma = satisfying_assignment(cnf)
        expected, certainty = ("SAT", "witness") if sigma else ("UNSAT", "asserted-by-reduction")
    except ParameterOutOfRange:
        sigma, expected, certainty = None, "UNKNOWN", "undecided"
    meta = {
        "t": t,
        "v": v,
        "variables": xs,
        "clauses": cs,
        "allowed": {edge(t if w in xs else v, w): s for w, s in allowed.items()},
        "epsilon": EPS,
        "cnf": cnf,
    }
    for ids, centre in ((anchor_ids[0], t), (anchor_ids[1], v)):
        for a in ids.values():
            meta["allowed"][edge(centre, a)] = {RED}
    hi = HardnessInstance(
        inst,
        "3sat",
        expected,
        certainty,
        labels=b.labels,
        gadgets=[g_t, g_v],
        gadget_vertices=gadget_vertices,
        anchor_ids=anchor_ids,
        meta=meta,
    )
    if sigma:
        hi.witness_positions, hi.witness_colors = assignment_witness(hi, sigma)
    return hi


def assignment_witness(hi: HardnessInstance, sigma: dict[int, bool]) -> tuple[dict[int, Point], dict[Edge, int]]:
    """t and v at their gadget middles; t-edges take the true literal, v-edges the negation of a true literal."""
    meta = hi.meta
    t, v = meta["t"], meta["v"]
    pos = {t: hi.gadgets[0].middle[0], v: hi.gadgets[1].middle[0]}
    cols: dict[Edge, int] = {}
    for centre, ids in ((t, hi.anchor_ids[0]), (v, hi.anchor_ids[1])):
        for a in ids.values():
            cols[edge(centre, a)] = RED
    for i, x in enumerate(meta["variables"], start=1):
        cols[edge(t, x)] = literal_color(i if sigma[i] else -i)
    for cl, c in zip(meta["cnf"].clauses, meta["clauses"]):
        lit = next(lit for lit in cl if sigma[abs(lit)] == (lit > 0))
        cols[edge(v, c)] = literal_color(-lit)
    return pos, cols


def characterization(hi: HardnessInstance, pos: dict[int, Point], cols: dict[Edge, int]) -> tuple[bool, bool, bool]:
    """The three conditions that decide whether an extension of a generated instance is valid:
    t and v inside their regions, every new edge in its allowed set, disjoint star colors."""
    meta = hi.meta
    t, v = meta["t"], meta["v"]
    in_regions = hi.gadgets[0].in_region(0, pos[t]) and hi.gadgets[1].in_region(0, pos[v])
    respects = all(cols[e] in allowed for e, allowed in meta["allowed"].items())
    t_cols = {cols[edge(t, x)] for x in meta["variables"]}
    v_cols = {cols[edge(v, c)] for c in meta["clauses"]}
    return in_regions, respects, not (t_cols & v_cols)
