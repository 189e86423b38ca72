"""Kernelization by vertex cover: shrink large twin classes, then lift by cloning."""

from __future__ import annotations

from dataclasses import dataclass, field

from .clone import can_clone_in_cell, insert_clone
from .config import RunConfig
from .drawing import Graph, LayeredDrawing, gt_upper_bound_from_vc
from .errors import LiftFailed, NotCloneable, OracleBudgetExceeded
from .gte import decide_gt_small


@dataclass
class VcTrace:
    """Deletions in order, each with the surviving members of its twin class."""

    cover: tuple[int, ...]
    k_prime: int
    threshold: int
    deletions: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    def replay(self, g: Graph) -> Graph:
        return g.remove_vertices(x for x, _ in self.deletions)


def approx_vertex_cover(g: Graph) -> set[int]:
    """Both endpoints of a greedy maximal matching over the sorted edges."""
    cover: set[int] = set()
    for u, v in g.sorted_edges():
        if u not in cover and v not in cover:
            cover.update((u, v))
    return cover


def twin_classes(g: Graph, S) -> list[list[int]]:
    """Vertices outside S grouped by identical neighbourhoods, ordered by sorted neighbourhood."""
    S = set(S)
    adj = g.adjacency()
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in g.sorted_vertices():
        if v in S:
            continue
        groups.setdefault(tuple(sorted(adj[v])), []).append(v)
    return [groups[k] for k in sorted(groups)]


def vc_threshold(k_prime: int, layers: int) -> int:
    """Largest twin-class size kept: layers^k' * ((k'^2 + k' + 2)/2 + 1)."""
    return layers**k_prime * ((k_prime * k_prime + k_prime + 2) // 2 + 1)


def vc_kernel_bound(k_prime: int, layers: int) -> int:
    return 2**k_prime * vc_threshold(k_prime, layers) + k_prime


def kernelize_vc(g: Graph, layers: int) -> tuple[Graph, VcTrace]:
    """Delete highest-id members of every twin class larger than the threshold."""
    if layers < 1:
        raise ValueError("layers must be positive")
    S = approx_vertex_cover(g)
    kp = len(S)
    t = vc_threshold(kp, layers)
    trace = VcTrace(tuple(sorted(S)), kp, t)
    for cls in twin_classes(g, S):
        if len(cls) <= t:
            continue
        keep = tuple(cls[:t])
        for x in reversed(cls[t:]):
            trace.deletions.append((x, keep))
    kernel = trace.replay(g)
    assert kernel.n <= vc_kernel_bound(kp, layers), "kernel exceeds its size bound"
    return kernel, trace


def lift_vc(d: LayeredDrawing, trace: VcTrace, original: Graph | None = None) -> LayeredDrawing:
    """Re-insert deleted vertices, last deletion first, each as a clone of a class member."""
    inserted: dict[tuple[int, ...], list[int]] = {}
    for x, reps in reversed(trace.deletions):
        pool = list(reps) + inserted.get(reps, [])
        for r in pool:
            if not can_clone_in_cell(d, trace.cover, r):
                continue
            try:
                d = insert_clone(d, trace.cover, r, x)
            except NotCloneable:
                continue
            inserted.setdefault(reps, []).append(x)
            break
        else:
            raise LiftFailed(f"no member of the class of {x} can be cloned")
    if original is not None and (d.graph.vertices != original.vertices or d.graph.edges != original.edges):
        raise LiftFailed("lifted drawing does not match the original graph")
    return d


def solve_gt_via_vc(g: Graph, config: RunConfig | None = None) -> tuple[int, LayeredDrawing]:
    """Smallest layer count found by deciding the kernel, with a lifted drawing of g."""
    config = config or RunConfig()
    S = approx_vertex_cover(g)
    ceiling = max(1, gt_upper_bound_from_vc(len(S)))
    for ell in range(1, ceiling + 1):
        kernel, trace = kernelize_vc(g, ell)
        res = decide_gt_small(kernel, ell, config)
        if res.verdict == "SAT":
            return ell, lift_vc(res.drawing, trace, g)
        if res.verdict == "UNKNOWN":
            raise OracleBudgetExceeded(f"kernel undecided at {ell} layers")
    raise OracleBudgetExceeded("no drawing found up to the thickness ceiling")
