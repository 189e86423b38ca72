"""Graphs, layered straight-line drawings and their validation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .coloring import exact_coloring
from .errors import DegenerateGeometry, DuplicatePoint, TooLarge
from .geometry import (
    Point,
    collinear_triples_exist,
    collinear_with,
    integer_grid,
    point_segment_dist2,
    dist2,
    pow2_floor_sqrt,
)

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on integer vertex ids."""

    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        es = frozenset(edge(u, v) for u, v in edges)
        vs = frozenset(vertices) | {x for e in es for x in e}
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        es = list(edges)
        vs = range(n) if n is not None else ()
        return cls(vs, es)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edges

    def remove_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return Graph(self.vertices - drop, [e for e in self.edges if not (set(e) & drop)])

    def remove_edges(self, es: Iterable[Edge]) -> "Graph":
        drop = {edge(*e) for e in es}
        return Graph(self.vertices, self.edges - drop)

    def add(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        return Graph(self.vertices | set(vertices), set(self.edges) | {edge(*e) for e in edges})

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        return Graph(keep, [e for e in self.edges if e[0] in keep and e[1] in keep])

    def complement_edges(self) -> list[Edge]:
        return [e for e in combinations(self.sorted_vertices(), 2) if e not in self.edges]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LayeredDrawing:
    """Vertex positions plus an edge coloring with colors in 1..layers."""

    graph: Graph
    gamma: Mapping[int, Point]
    chi: Mapping[Edge, int]
    layers: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", dict(self.gamma))
        object.__setattr__(self, "chi", {edge(*e): c for e, c in self.chi.items()})
        if self.layers < 1:
            raise ValueError("layers must be positive")
        missing = self.graph.vertices - self.gamma.keys()
        if missing:
            raise ValueError(f"vertices without position: {sorted(missing)}")
        extra = self.gamma.keys() - self.graph.vertices
        if extra:
            raise ValueError(f"positions for unknown vertices: {sorted(extra)}")
        if set(self.chi) != set(self.graph.edges):
            raise ValueError("coloring must cover exactly the edges of the graph")
        for e, c in self.chi.items():
            if not 1 <= c <= self.layers:
                raise ValueError(f"edge {e} has color {c} outside 1..{self.layers}")
        pts = list(self.gamma.values())
        if len(set(pts)) != len(pts):
            raise DuplicatePoint("two vertices share a position")

    def segment(self, e: Edge) -> tuple[Point, Point]:
        return self.gamma[e[0]], self.gamma[e[1]]

    def with_layers(self, layers: int) -> "LayeredDrawing":
        return LayeredDrawing(self.graph, self.gamma, self.chi, layers)

    def restrict(self, vs: Iterable[int]) -> "LayeredDrawing":
        g = self.graph.induced(vs)
        return LayeredDrawing(
            g, {v: self.gamma[v] for v in g.vertices}, {e: self.chi[e] for e in g.edges}, self.layers
        )


@dataclass
class CrossingReport:
    """Monochromatic crossings as (edge, edge, color), lexicographically ordered."""

    pairs: list[tuple[Edge, Edge, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.pairs)

    def __bool__(self) -> bool:
        return bool(self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs


def _isign(v: int) -> int:
    return (v > 0) - (v < 0)


def _iorient(p, q, r) -> int:
    return _isign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def _inside_open(p, a, b) -> bool:
    if _iorient(a, b, p) != 0 or p == a or p == b:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _icross(a, b, c, d) -> bool:
    return _iorient(a, b, c) * _iorient(a, b, d) < 0 and _iorient(c, d, a) * _iorient(c, d, b) < 0


def check_no_vertex_on_edge(g: Graph, gamma: Mapping[int, Point]) -> None:
    """Raise DegenerateGeometry if some edge passes through a non-endpoint vertex."""
    verts = g.sorted_vertices()
    grid = dict(zip(verts, integer_grid([gamma[v] for v in verts])))
    for u, v in g.sorted_edges():
        a, b = grid[u], grid[v]
        lox, hix = min(a[0], b[0]), max(a[0], b[0])
        loy, hiy = min(a[1], b[1]), max(a[1], b[1])
        for w in verts:
            if w == u or w == v:
                continue
            p = grid[w]
            if lox <= p[0] <= hix and loy <= p[1] <= hiy and _inside_open(p, a, b):
                raise DegenerateGeometry(f"edge {u}-{v} passes through vertex {w}")


def crossing_pairs(g: Graph, gamma: Mapping[int, Point], edges: Iterable[Edge] | None = None) -> list[tuple[Edge, Edge]]:
    """All vertex-disjoint pairs of edges whose segments cross properly, sorted."""
    es = sorted(edges) if edges is not None else g.sorted_edges()
    verts = sorted({x for e in es for x in e})
    grid = dict(zip(verts, integer_grid([gamma[v] for v in verts])))
    boxes = []
    for u, v in es:
        a, b = grid[u], grid[v]
        boxes.append((min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])))
    out = []
    for i in range(len(es)):
        u1, v1 = es[i]
        a, b = grid[u1], grid[v1]
        bi = boxes[i]
        for j in range(i + 1, len(es)):
            u2, v2 = es[j]
            if u2 in (u1, v1) or v2 in (u1, v1):
                continue
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            if _icross(a, b, grid[u2], grid[v2]):
                out.append((es[i], es[j]))
    return out


def validate(d: LayeredDrawing) -> CrossingReport:
    """Every monochromatic proper crossing of the drawing.

    Raises DegenerateGeometry when an edge runs through a vertex, which also
    covers every collinear overlap between edges.
    """
    check_no_vertex_on_edge(d.graph, d.gamma)
    by_color: dict[int, list[Edge]] = {}
    for e, c in d.chi.items():
        by_color.setdefault(c, []).append(e)
    pairs = []
    for c, es in by_color.items():
        for e1, e2 in crossing_pairs(d.graph, d.gamma, es):
            pairs.append((e1, e2, c))
    pairs.sort()
    return CrossingReport(pairs)


def is_valid(d: LayeredDrawing) -> bool:
    try:
        return validate(d).is_empty
    except DegenerateGeometry:
        return False


def is_general_position(d: LayeredDrawing) -> bool:
    return not collinear_triples_exist([d.gamma[v] for v in d.graph.sorted_vertices()])


def clearance_radius2(gamma: Mapping[int, Point], g: Graph, v: int) -> Fraction | None:
    """Squared clearance of v: min squared distance to other vertices and non-incident edges, over 4.

    Returns None when there is nothing else in the drawing.
    """
    p = gamma[v]
    best = None
    for w, q in gamma.items():
        if w != v:
            d2 = dist2(p, q)
            best = d2 if best is None or d2 < best else best
    for a, b in g.edges:
        if v in (a, b):
            continue
        d2 = point_segment_dist2(p, gamma[a], gamma[b])
        best = d2 if best is None or d2 < best else best
    return None if best is None else best / 4


def _random_offset(rng: random.Random, radius: Fraction) -> Point:
    # Components bounded by radius/2 keep the offset length below the radius.
    res = 1 << 8
    dx = Fraction(rng.randint(-res + 1, res - 1), res) * radius / 2
    dy = Fraction(rng.randint(-res + 1, res - 1), res) * radius / 2
    if dx == 0 and dy == 0:
        dx = radius / 4
    return Point(dx, dy)


def perturb_to_general_position(d: LayeredDrawing, seed: int = 0) -> LayeredDrawing:
    """Move vertices slightly until no three are collinear, keeping the coloring valid."""
    if is_general_position(d):
        return d
    rng = random.Random(seed)
    gamma = dict(d.gamma)
    order = d.graph.sorted_vertices()
    while True:
        pts = [gamma[v] for v in order]
        bad = next((i for i in range(len(order)) if collinear_with(pts, i)), None)
        if bad is None:
            break
        v = order[bad]
        r2 = clearance_radius2(gamma, d.graph, v)
        radius = pow2_floor_sqrt(r2) if r2 else Fraction(1)
        while True:
            trial = dict(gamma)
            trial[v] = gamma[v] + _random_offset(rng, radius)
            cand = LayeredDrawing(d.graph, trial, d.chi, d.layers)
            tpts = [trial[w] for w in order]
            if not collinear_with(tpts, bad) and is_valid(cand):
                gamma = trial
                break
            radius /= 2
    return LayeredDrawing(d.graph, gamma, d.chi, d.layers)


def conflict_graph(g: Graph, gamma: Mapping[int, Point]) -> tuple[list[Edge], list[set[int]]]:
    es = g.sorted_edges()
    index = {e: i for i, e in enumerate(es)}
    adj: list[set[int]] = [set() for _ in es]
    for e1, e2 in crossing_pairs(g, gamma):
        adj[index[e1]].add(index[e2])
        adj[index[e2]].add(index[e1])
    return es, adj


def min_layers_fixed_drawing(
    g: Graph, gamma: Mapping[int, Point], max_edges: int = 64
) -> tuple[int, dict[Edge, int]]:
    """Fewest layers for the fixed positions, with an optimal coloring.

    Edgeless graphs report one layer since layer counts are positive.
    """
    if g.m > max_edges:
        raise TooLarge(f"{g.m} edges exceeds the coloring bound of {max_edges}")
    check_no_vertex_on_edge(g, gamma)
    es, adj = conflict_graph(g, gamma)
    colors = exact_coloring(adj)
    chi = {e: colors[i] + 1 for i, e in enumerate(es)}
    return max([1] + list(chi.values())), chi


def gt_upper_bound_from_vc(k: int) -> int:
    """Ceiling of k/2: an upper bound on geometric thickness given a vertex cover of size k."""
    if k < 0:
        raise ValueError("vertex cover size must be non-negative")
    return (k + 1) // 2


def vertex_placement_ok(d: LayeredDrawing, w: int) -> bool:
    """Local check that vertex w and its edges are in general position and cross nothing of their color.

    Assumes the drawing without w was valid and in general position.
    """
    order = d.graph.sorted_vertices()
    pts = [d.gamma[v] for v in order]
    if collinear_with(pts, order.index(w)):
        return False
    grid = dict(zip(order, integer_grid(pts)))
    mine = [e for e in d.graph.sorted_edges() if w in e]
    others = [e for e in d.graph.sorted_edges() if w not in e]
    for e in mine:
        a, b = grid[e[0]], grid[e[1]]
        c = d.chi[e]
        for f in others:
            if d.chi[f] != c or f[0] in e or f[1] in e:
                continue
            if _icross(a, b, grid[f[0]], grid[f[1]]):
                return False
    return True
