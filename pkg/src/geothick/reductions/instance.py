"""Generated extension instances with provenance, witness recipes and shared builders."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..drawing import Edge, Graph, LayeredDrawing, edge, validate
from ..errors import DegenerateScaling
from ..geometry import Point, dist2, point_segment_dist2, pow2_floor_sqrt, sqrt_lower
from ..gte import GteInstance
from .gadget import ChoiceGadget

RED = 1


@dataclass
class HardnessInstance:
    """A GTE instance plus where it came from and, when positive, how to extend it."""

    instance: GteInstance
    source: str  # "mcc" or "3sat"
    expected: str  # "SAT" or "UNSAT"
    certainty: str  # "witness", "asserted-by-reduction" or "trivial"
    witness_positions: dict[int, Point] = field(default_factory=dict)
    witness_colors: dict[Edge, int] = field(default_factory=dict)
    labels: dict[int, str] = field(default_factory=dict)
    gadgets: list[ChoiceGadget] = field(default_factory=list)
    gadget_vertices: list[int] = field(default_factory=list)
    anchor_ids: list[dict[str, int]] = field(default_factory=list)
    blocking: dict[tuple[int, int], list[Edge]] = field(default_factory=dict)
    middle_ids: dict[int, tuple[int, int]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def layers(self) -> int:
        return self.instance.layers

    def witness_drawing(self) -> LayeredDrawing:
        if self.expected != "SAT" or not (self.witness_colors or not self.instance.missing_edges):
            raise ValueError("instance carries no witness")
        return self.instance.completed(self.witness_colors, self.witness_positions)


class DrawingBuilder:
    """Incrementally collects labelled vertices, colored edges and positions."""

    def __init__(self):
        self.gamma: dict[int, Point] = {}
        self.chi: dict[Edge, int] = {}
        self.labels: dict[int, str] = {}
        self.missing_vertices: list[int] = []
        self.missing_edges: list[Edge] = []

    def vertex(self, label: str, p: Point | None) -> int:
        v = len(self.labels)
        self.labels[v] = label
        if p is None:
            self.missing_vertices.append(v)
        else:
            self.gamma[v] = p
        return v

    def add_edge(self, u: int, v: int, color: int | None) -> Edge:
        e = edge(u, v)
        if color is None:
            self.missing_edges.append(e)
        else:
            self.chi[e] = color
        return e

    def segments(self) -> list[tuple[Point, Point]]:
        return [(self.gamma[u], self.gamma[v]) for u, v in self.chi]

    def gte(self, layers: int) -> GteInstance:
        h = Graph(self.gamma.keys(), self.chi.keys())
        g = Graph(self.labels.keys(), list(self.chi.keys()) + self.missing_edges)
        d = LayeredDrawing(h, self.gamma, self.chi, layers)
        report = validate(d)
        assert report.is_empty, f"generated predrawn part has crossings: {report.pairs[:3]}"
        return GteInstance(g, d)


# Base directions for nested blocking triangles; together they surround the centre.
_TRIANGLE_DIRS = (
    (Fraction(7, 8), Fraction(1, 9)),
    (Fraction(-4, 9), Fraction(7, 9)),
    (Fraction(-5, 8), Fraction(-11, 17)),
)
_TWISTS = [(Fraction(1), Fraction(0)), (Fraction(12, 13), Fraction(5, 13)), (Fraction(4, 5), Fraction(3, 5)), (Fraction(24, 25), Fraction(-7, 25))]


def blocking_radius(
    builder: DrawingBuilder, center: Point, tunnels: list[tuple[Point, Point]], eps: Fraction
) -> Fraction:
    """Power-of-two radius below half the clearance of ``center``.

    Clearance counts other drawn points, drawn edges, and the distance to
    every tunnel (segment thickened by ``eps``).
    """
    best2 = None
    for p in builder.gamma.values():
        if p != center:
            d = dist2(p, center)
            best2 = d if best2 is None or d < best2 else best2
    for a, b in builder.segments():
        if a != center and b != center:
            d = point_segment_dist2(center, a, b)
            best2 = d if best2 is None or d < best2 else best2
    r = sqrt_lower(best2, 24) if best2 is not None else Fraction(1)
    for a, b in tunnels:
        gap = sqrt_lower(point_segment_dist2(center, a, b), 24) - eps
        if gap <= 0:
            raise DegenerateScaling(f"blocking disk around {center} meets a visibility tunnel")
        r = min(r, gap)
    return pow2_floor_sqrt((r / 2) ** 2)


def add_blocking_triangles(
    builder: DrawingBuilder,
    owner: int,
    colors: list[int],
    radius: Fraction,
    avoid_dirs: list[Point],
    label: str,
) -> dict[int, list[int]]:
    """Nested homothetic triangles around ``owner``, one per color, innermost first.

    The triangle corners avoid the rays from ``owner`` in ``avoid_dirs`` so
    that planned edges never pass through a corner.
    """
    center = builder.gamma[owner]
    for c, s in _TWISTS:
        dirs = [Point(c * x - s * y, s * x + c * y) for x, y in _TRIANGLE_DIRS]
        if not any(d.x * a.y - d.y * a.x == 0 and d.x * a.x + d.y * a.y > 0 for d in dirs for a in avoid_dirs):
            break
    else:  # pragma: no cover - the twists cover every finite set of bad rays but one
        raise DegenerateScaling(f"no triangle orientation avoids the edges of {label}")
    out: dict[int, list[int]] = {}
    n = len(colors)
    for idx, col in enumerate(colors):
        rho = radius * Fraction(idx + 1, n + 1)
        vs = [builder.vertex(f"{label}.tri{col}.{t}", center + d.scale(rho)) for t, d in enumerate(dirs)]
        for t in range(3):
            builder.add_edge(vs[t], vs[(t + 1) % 3], col)
        out[col] = vs
    return out
