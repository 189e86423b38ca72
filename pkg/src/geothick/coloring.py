"""Exact vertex coloring by DSATUR-ordered branch and bound."""

from __future__ import annotations

from typing import Sequence


def greedy_clique(adj: Sequence[set[int]]) -> list[int]:
    """A maximal clique grown greedily from high-degree vertices (a lower bound)."""
    best: list[int] = []
    order = sorted(range(len(adj)), key=lambda v: -len(adj[v]))
    for start in order[:8]:
        clique = [start]
        cand = set(adj[start])
        while cand:
            v = max(cand, key=lambda u: (len(adj[u] & cand), -u))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_greedy(adj: Sequence[set[int]]) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (len(sat[u]), len(adj[u]), -u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for u in adj[v]:
            sat[u].add(c)
    return colors


def exact_coloring(adj: Sequence[set[int]]) -> list[int]:
    """Optimal coloring of the graph given by adjacency sets; colors are 0-based."""
    n = len(adj)
    if n == 0:
        return []
    best = dsatur_greedy(adj)
    best_k = max(best) + 1
    lower = len(greedy_clique(adj))
    if best_k <= lower:
        return best

    colors = [-1] * n
    # counts[v][c] = number of neighbours of v currently colored c
    counts = [dict() for _ in range(n)]

    def pick() -> int:
        chosen, key = -1, None
        for u in range(n):
            if colors[u] >= 0:
                continue
            k = (len(counts[u]), len(adj[u]), -u)
            if key is None or k > key:
                chosen, key = u, k
        return chosen

    def assign(v: int, c: int, delta: int) -> None:
        for u in adj[v]:
            cu = counts[u]
            nv = cu.get(c, 0) + delta
            if nv:
                cu[c] = nv
            else:
                cu.pop(c, None)

    def search(colored: int, used: int) -> bool:
        nonlocal best, best_k
        if colored == n:
            best = list(colors)
            best_k = used
            return best_k <= lower
        v = pick()
        limit = min(used + 1, best_k - 1)
        for c in range(limit):
            if c >= best_k - 1:
                break
            if c in counts[v]:
                continue
            colors[v] = c
            assign(v, c, 1)
            done = search(colored + 1, max(used, c + 1))
            assign(v, c, -1)
            colors[v] = -1
            if done:
                return True
        return False

    search(0, 0)
    return best
