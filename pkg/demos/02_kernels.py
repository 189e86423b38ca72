"""Walkthrough: shrinking graphs with the two kernelizations and lifting drawings back.

Run with ``python3 demos/02_kernels.py``.
"""

from __future__ import annotations

from geothick.drawing import Graph, LayeredDrawing, validate
from geothick.geometry import Point
from geothick.kernel_fen import fen_kernel_bound, kernelize_fen, lift_fen
from geothick.kernel_vc import kernelize_vc, lift_vc
from geothick.search import planar_drawing


def vertex_cover_kernel() -> None:
    star = Graph.from_edges([(0, i) for i in range(1, 21)])
    kernel, trace = kernelize_vc(star, 1)
    print(f"Star K_1,20 with one layer: cover size bound k'={trace.k_prime}, twin threshold {trace.threshold}")
    print(f"  kernel keeps {kernel.n} of {star.n} vertices ({len(trace.deletions)} twins deleted)")
    small = planar_drawing(kernel)
    big = lift_vc(small, trace, star)
    print(f"  lifted drawing: {big.graph.n} vertices, valid: {validate(big).is_empty}")


def feedback_edge_kernel() -> None:
    cycle = Graph.from_edges([(i, (i + 1) % 6) for i in range(6)])
    kernel, trace = kernelize_fen(cycle, 2)
    print(f"6-cycle with two layers: feedback edge number {trace.k}, size bound {fen_kernel_bound(trace.k)}")
    print(f"  kernel: {kernel.n} vertices, {kernel.m} edge(s), {len(trace.paths)} long path(s) removed")
    u, v = kernel.sorted_vertices()
    small = LayeredDrawing(kernel, {u: Point(0, 0), v: Point(10, 0)}, {(u, v): 1}, 2)
    big = lift_fen(small, trace, cycle)
    print(f"  lifted drawing: {big.graph.n} vertices, valid: {validate(big).is_empty}")
    for w in big.graph.sorted_vertices():
        p = big.gamma[w]
        print(f"    vertex {w} at ({p.x}, {p.y})")


if __name__ == "__main__":
    vertex_cover_kernel()
    feedback_edge_kernel()
