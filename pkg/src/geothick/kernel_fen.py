"""Kernelization by feedback edge number with lifting by subdivided chords.

After removing degree-0/1 vertices, a spanning forest T leaves a feedback
edge set F.  The tree edges split into paths between branch vertices; long
paths are dropped.  Lifting re-draws each dropped path along the straight
chord between its endpoints and resolves every crossing by placing a short
subsegment around it in a different color.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .drawing import Edge, Graph, LayeredDrawing, clearance_radius2, edge, validate
from .errors import DegenerateGeometry, LiftFailed, ParameterOutOfRange
from .geometry import Point, lerp, on_open_segment, orient, pow2_floor_sqrt, segment_intersection


@dataclass
class FenTrace:
    k: int
    pruned: list[tuple[int, int | None]] = field(default_factory=list)
    feedback: list[Edge] = field(default_factory=list)
    branch: list[int] = field(default_factory=list)
    paths: list[tuple[int, ...]] = field(default_factory=list)

    def replay(self, g: Graph) -> Graph:
        h = g.remove_vertices(v for v, _ in self.pruned)
        for p in self.paths:
            h = h.remove_edges(edge(a, b) for a, b in zip(p, p[1:]))
            h = h.remove_vertices(p[1:-1])
        return h


def prune_degree_le1(g: Graph) -> tuple[Graph, list[tuple[int, int | None]]]:
    """Repeatedly delete the smallest-id vertex of degree at most one."""
    adj = g.adjacency()
    pruned: list[tuple[int, int | None]] = []
    alive = set(g.vertices)
    heap = [v for v in alive if len(adj[v]) <= 1]
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if v not in alive or len(adj[v]) > 1:
            continue
        nbr = next(iter(adj[v])) if adj[v] else None
        pruned.append((v, nbr))
        alive.discard(v)
        if nbr is not None:
            adj[nbr].discard(v)
            if len(adj[nbr]) <= 1:
                heapq.heappush(heap, nbr)
        adj[v] = set()
    return g.induced(alive), pruned


def spanning_forest(g: Graph) -> tuple[list[Edge], list[Edge]]:
    """Kruskal over sorted edges: (tree edges, non-tree edges)."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, rest = [], []
    for u, v in g.sorted_edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            rest.append((u, v))
        else:
            parent[ru] = rv
            tree.append((u, v))
    return tree, rest


def decompose(gp: Graph) -> tuple[list[Edge], list[int], list[tuple[int, ...]]]:
    """Feedback edges F, branch set C and the tree paths between C vertices, shortest first."""
    tree, F = spanning_forest(gp)
    tadj: dict[int, list[int]] = {v: [] for v in gp.vertices}
    for u, v in tree:
        tadj[u].append(v)
        tadj[v].append(u)
    C = {x for e in F for x in e} | {v for v in gp.vertices if len(tadj[v]) >= 3}
    seen: set[Edge] = set()
    paths: list[tuple[int, ...]] = []
    for c in sorted(C):
        for nb in sorted(tadj[c]):
            if edge(c, nb) in seen:
                continue
            path = [c, nb]
            seen.add(edge(c, nb))
            while path[-1] not in C:
                cur = path[-1]
                nxt = [w for w in tadj[cur] if edge(cur, w) not in seen]
                assert len(nxt) == 1, "internal path vertex must have tree degree two"
                seen.add(edge(cur, nxt[0]))
                path.append(nxt[0])
            if path[0] > path[-1]:
                path.reverse()
            paths.append(tuple(path))
    assert len(seen) == len(tree), "tree paths must cover the spanning forest"
    paths.sort(key=lambda p: (len(p), p))
    k = len(F)
    assert len(C) <= 4 * k and len(paths) <= 4 * k
    return F, sorted(C), paths


def fen_kernel_bound(k: int) -> int:
    return 10 * k * 81**k


def kernelize_fen(g: Graph, layers: int) -> tuple[Graph, FenTrace]:
    """Keep the shortest paths until the next one is longer than twice the kept size plus the path count."""
    if layers < 2:
        raise ParameterOutOfRange("the path-removal kernel needs at least two layers")
    gp, pruned = prune_degree_le1(g)
    F, C, paths = decompose(gp)
    x = len(paths)
    kept_edges = len(F)
    j = x
    for i, p in enumerate(paths):
        if len(p) - 1 > 2 * (kept_edges + x):
            j = i
            break
        kept_edges += len(p) - 1
    trace = FenTrace(len(F), pruned, F, C, paths[j:])
    kernel = trace.replay(g)
    assert not (kernel.vertices - set(C) - {v for p in paths[:j] for v in p})
    assert kernel.n <= fen_kernel_bound(trace.k), "kernel exceeds its size bound"
    return kernel, trace


# --- lifting ----------------------------------------------------------------


def _crossings_along(gamma, chi, edges, a: Point, b: Point, skip: set[int]) -> list[tuple[Fraction, set[int]]]:
    """Parameters along a->b where it properly crosses drawn edges, with the crossed colors."""
    hits: dict[Fraction, set[int]] = {}
    for e in edges:
        if e[0] in skip or e[1] in skip:
            continue
        p, q = gamma[e[0]], gamma[e[1]]
        o1, o2 = orient(a, b, p), orient(a, b, q)
        o3, o4 = orient(p, q, a), orient(p, q, b)
        if o1 * o2 < 0 and o3 * o4 < 0:
            t = segment_intersection(a, b, p, q)
            hits.setdefault(t, set()).add(chi[e])
    return sorted(hits.items())


def _chord_degenerate(d_gamma, edges, a: Point, b: Point, ends: set[int]) -> bool:
    """True if segment ab meets a vertex other than its ends or overlaps a drawn edge."""
    for v, p in d_gamma.items():
        if v not in ends and (p == a or p == b or on_open_segment(p, a, b)):
            return True
    for e in edges:
        p, q = d_gamma[e[0]], d_gamma[e[1]]
        if {p, q} == {a, b}:
            return True
        if on_open_segment(a, p, q) or on_open_segment(b, p, q):
            return True
    return False


def _plan_chord(gamma, chi, edges, a, b, q, skip, layers):
    """Points and colors for a chord with q subdivision points, or None if impossible."""
    events = _crossings_along(gamma, chi, edges, a, b, skip)
    r = len(events)
    if q < r + 1 and r > 0:
        return None
    ts = [Fraction(0)] + [t for t, _ in events] + [Fraction(1)]
    cuts = [(ts[i] + ts[i + 1]) / 2 for i in range(r + 1)] if r > 0 else []
    extra = q - len(cuts)
    start = cuts[-1] if cuts else Fraction(0)
    cuts += [start + (1 - start) * Fraction(i, extra + 1) for i in range(1, extra + 1)]
    bounds = [Fraction(0)] + cuts + [Fraction(1)]
    colors = []
    for lo, hi in zip(bounds, bounds[1:]):
        crossed = set()
        for t, cs in events:
            if lo < t < hi:
                crossed |= cs
        free = [c for c in range(1, layers + 1) if c not in crossed]
        if not free:
            return None
        colors.append(free[0])
    return [lerp(a, b, t) for t in cuts], colors


_BOW_DIRECTIONS = [(0, 1), (0, -1), (1, 2), (-1, 2), (2, 1), (-2, 1), (1, -2), (-1, -2), (3, 1), (-3, -1)]


def _insert_path(d: LayeredDrawing, path: tuple[int, ...]) -> LayeredDrawing:
    u, v = path[0], path[-1]
    internal = list(path[1:-1])
    gamma = dict(d.gamma)
    edges = d.graph.sorted_edges()
    chi = d.chi
    a, b = gamma[u], gamma[v]
    plan = None
    bow = None
    if not _chord_degenerate(gamma, edges, a, b, {u, v}):
        plan = _plan_chord(gamma, chi, edges, a, b, len(internal), {u, v}, d.layers)
    if plan is None and internal:
        r2 = clearance_radius2(gamma, d.graph, u) or Fraction(1)
        dx, dy = b.x - a.x, b.y - a.y
        for sx, sy in _BOW_DIRECTIONS:
            wx, wy = sx * dx - sy * dy, sx * dy + sy * dx  # rotate the chord direction
            scale = pow2_floor_sqrt(r2 / (wx * wx + wy * wy))
            for _ in range(8):
                p1 = Point(a.x + wx * scale, a.y + wy * scale)
                if orient(a, b, p1) != 0 and not _chord_degenerate(gamma, edges, a, p1, {u}) and not _chord_degenerate(gamma, edges, p1, b, {v}):
                    if not _crossings_along(gamma, chi, edges, a, p1, {u}):
                        plan = _plan_chord(gamma, chi, edges, p1, b, len(internal) - 1, {v}, d.layers)
                        if plan is not None:
                            bow = p1
                            break
                scale /= 2
            if plan is not None:
                break
    if plan is None:
        raise LiftFailed(f"cannot re-insert path {path}")
    points, colors = plan
    if bow is not None:
        points = [bow] + points
        colors = [1] + colors
    if len(points) != len(internal):
        raise LiftFailed(f"path {path} needs {len(points)} subdivision vertices, has {len(internal)}")
    for w, p in zip(internal, points):
        gamma[w] = p
    new_edges = list(zip(path, path[1:]))
    chi2 = dict(chi)
    for (x, y), c in zip(new_edges, colors):
        chi2[edge(x, y)] = c
    g2 = d.graph.add(internal, new_edges)
    return LayeredDrawing(g2, gamma, chi2, d.layers)


def _attach_pendant(d: LayeredDrawing, v: int, nbr: int | None) -> LayeredDrawing:
    gamma = dict(d.gamma)
    if nbr is None:
        if gamma:
            xs = max(p.x for p in gamma.values()) + 1
            ys = max(p.y for p in gamma.values()) + 1
            p = Point(xs, ys)
        else:
            p = Point(0, 0)
        gamma[v] = p
        return LayeredDrawing(d.graph.add([v]), gamma, d.chi, d.layers)
    base = gamma[nbr]
    r2 = clearance_radius2(gamma, d.graph, nbr) or Fraction(4)
    g2 = d.graph.add([v], [(v, nbr)])
    chi2 = dict(d.chi)
    chi2[edge(v, nbr)] = 1
    for sx, sy in _BOW_DIRECTIONS + [(1, 0), (-1, 0), (1, 1), (-1, -1)]:
        step = pow2_floor_sqrt(r2 / (sx * sx + sy * sy))
        p = Point(base.x + sx * step, base.y + sy * step)
        if p in gamma.values():
            continue
        if not _chord_degenerate(d.gamma, d.graph.sorted_edges(), base, p, {nbr}):
            gamma[v] = p
            return LayeredDrawing(g2, gamma, chi2, d.layers)
    raise LiftFailed(f"cannot re-attach pruned vertex {v}")


def lift_fen(d: LayeredDrawing, trace: FenTrace, original: Graph | None = None) -> LayeredDrawing:
    """Re-insert removed paths (shortest first), then pruned vertices in reverse order."""
    if trace.paths and d.layers < 2:
        raise ParameterOutOfRange("path re-insertion needs at least two layers")
    for path in trace.paths:
        d = _insert_path(d, path)
    for v, nbr in reversed(trace.pruned):
        d = _attach_pendant(d, v, nbr)
    try:
        report = validate(d)
    except DegenerateGeometry as exc:
        raise LiftFailed(f"lifted drawing is degenerate: {exc}") from exc
    if report:
        raise LiftFailed(f"lifted drawing has {len(report)} monochromatic crossings")
    if original is not None and (d.graph.vertices != original.vertices or d.graph.edges != original.edges):
        raise LiftFailed("lifted drawing does not match the original graph")
    return d
