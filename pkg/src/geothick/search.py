"""Placement heuristics: planar embeddings and searches for few-layer drawings."""

from __future__ import annotations

import random
from typing import Iterator

import networkx as nx

from .drawing import (
    Graph,
    LayeredDrawing,
    crossing_pairs,
    is_general_position,
    min_layers_fixed_drawing,
    perturb_to_general_position,
)
from .geometry import Point, collinear_triples_exist


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.sorted_vertices())
    h.add_edges_from(g.sorted_edges())
    return h


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(to_networkx(g))[0]


def planar_drawing(g: Graph, seed: int = 0) -> LayeredDrawing | None:
    """A one-layer straight-line drawing in general position, or None if g is not planar.

    Relies on Fary's theorem: every planar graph has a straight-line plane drawing.
    """
    ok, emb = nx.check_planarity(to_networkx(g))
    if not ok:
        return None
    if g.n == 0:
        return LayeredDrawing(g, {}, {}, 1)
    pos = nx.combinatorial_embedding_to_pos(emb)
    gamma = {v: Point(x, y) for v, (x, y) in pos.items()}
    d = LayeredDrawing(g, gamma, {e: 1 for e in g.edges}, 1)
    return perturb_to_general_position(d, seed)


def convex_positions(order: list[int]) -> dict[int, Point]:
    """Points on the parabola y = x^2: convex and with no three collinear."""
    return {v: Point(i, i * i) for i, v in enumerate(order)}


def random_positions(vertices: list[int], rng: random.Random, size: int = 1000) -> dict[int, Point]:
    while True:
        pts = {v: Point(rng.randint(0, size), rng.randint(0, size)) for v in vertices}
        vals = list(pts.values())
        if len(set(vals)) == len(vals) and not collinear_triples_exist(vals):
            return pts


def _crossings(g: Graph, gamma) -> int:
    return len(crossing_pairs(g, gamma))


def reduce_crossings(g: Graph, gamma: dict[int, Point], rng: random.Random, rounds: int = 40, size: int = 1000) -> dict[int, Point]:
    """Hill-climb single-vertex moves that do not increase the crossing count."""
    gamma = dict(gamma)
    best = _crossings(g, gamma)
    verts = g.sorted_vertices()
    for _ in range(rounds):
        if best == 0:
            break
        v = rng.choice(verts)
        trial = dict(gamma)
        trial[v] = Point(rng.randint(0, size), rng.randint(0, size))
        vals = list(trial.values())
        if len(set(vals)) != len(vals) or collinear_triples_exist(vals):
            continue
        c = _crossings(g, trial)
        if c <= best:
            gamma, best = trial, c
    return gamma


def candidate_placements(g: Graph, budget: int, seed: int) -> Iterator[dict[int, Point]]:
    rng = random.Random(seed)
    verts = g.sorted_vertices()
    pd = planar_drawing(g, seed)
    if pd is not None:
        yield pd.gamma
        return
    yield convex_positions(verts)
    for i in range(1, budget):
        if i % 3 == 0:
            order = verts[:]
            rng.shuffle(order)
            yield convex_positions(order)
        else:
            yield reduce_crossings(g, random_positions(verts, rng), rng)


def find_drawing(g: Graph, layers: int, budget: int = 300, seed: int = 0, max_edges: int = 64) -> LayeredDrawing | None:
    """Search candidate placements for one admitting a ``layers``-coloring."""
    for gamma in candidate_placements(g, budget, seed):
        ell, chi = min_layers_fixed_drawing(g, gamma, max_edges)
        if ell <= layers:
            d = LayeredDrawing(g, gamma, chi, layers)
            assert is_general_position(d)
            return d
    return None


def edge_count_refutes(g: Graph, layers: int) -> bool:
    """True if Euler's bound shows g cannot be split into ``layers`` plane layers."""
    n, m = g.n, g.m
    if n < 3:
        return False
    if m > layers * (3 * n - 6):
        return True
    if nx.is_bipartite(to_networkx(g)) and m > layers * (2 * n - 4):
        return True
    return False
