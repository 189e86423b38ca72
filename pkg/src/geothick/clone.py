"""Cells, tie-shapes, admissible direction regions and clone insertion.

A clone of a vertex v is a new vertex with the same neighbourhood and the
same edge colors.  Whether one can be placed next to v without creating a
monochromatic crossing depends only on the directions of v's same-colored
edge pairs, so the admissible region is kept as a set of directions at v.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .drawing import LayeredDrawing, clearance_radius2, edge, vertex_placement_ok
from .errors import ApexQuery, NotCloneable
from .geometry import Direction, Point, cross, direction_key, orient, pow2_floor_sqrt


@dataclass(frozen=True)
class HalfPlane:
    """Open half-plane bounded by line ab on the side not containing v."""

    a: Point
    b: Point
    v: Point

    def __post_init__(self):
        if orient(self.a, self.b, self.v) == 0:
            raise ValueError("half-plane witness lies on its boundary line")

    def contains(self, p: Point) -> bool:
        return orient(self.a, self.b, p) == -orient(self.a, self.b, self.v)


@dataclass(frozen=True)
class TieShape:
    """Double wedge at ``apex`` between rays dir1, dir2 and its point reflection."""

    apex: Point
    dir1: Direction
    dir2: Direction

    def __post_init__(self):
        if cross(self.dir1.dx, self.dir1.dy, self.dir2.dx, self.dir2.dy) == 0:
            raise ValueError("tie directions must not be parallel")

    def contains_direction(self, w: Direction) -> bool:
        d1, d2 = self.dir1, self.dir2
        return cross(d1.dx, d1.dy, w.dx, w.dy) * cross(w.dx, w.dy, d2.dx, d2.dy) > 0


def tie_contains(t: TieShape, p: Point) -> bool:
    if p == t.apex:
        raise ApexQuery("query point coincides with the tie apex")
    return t.contains_direction(Direction.between(t.apex, p))


def canonical(d: Direction) -> Direction:
    """Representative of the line through d with angle in [0, pi)."""
    if d.dy > 0 or (d.dy == 0 and d.dx > 0):
        return d
    return -d


def _in_arc(s: Direction, e: Direction, w: Direction) -> bool:
    # Projective arc swept counterclockwise from s to e, both canonical.
    prod = cross(s.dx, s.dy, w.dx, w.dy) * cross(w.dx, w.dy, e.dx, e.dy)
    if direction_key(s) < direction_key(e):
        return prod > 0
    return prod < 0


def _between(s: Direction, e: Direction) -> Direction:
    """A rational direction strictly inside the projective arc from s to e."""
    if s == e:
        return Direction(-s.dy, s.dx)
    if direction_key(s) < direction_key(e):
        return canonical(Direction(s.dx + e.dx, s.dy + e.dy))
    return canonical(Direction(s.dx - e.dx, s.dy - e.dy))


@dataclass(frozen=True)
class AngularDomain:
    """A point-symmetric set of open direction intervals at an apex.

    Stored on the projective circle: each interval (s, e) is the set of lines
    swept counterclockwise from s to e, with s and e canonical.  ``full`` is
    the whole circle.  Every interval stands for itself and its antipode.
    """

    apex: Point
    intervals: tuple[tuple[Direction, Direction], ...] = ()
    full: bool = False

    @classmethod
    def whole(cls, apex: Point) -> "AngularDomain":
        return cls(apex, (), True)

    @classmethod
    def from_tie(cls, t: TieShape) -> "AngularDomain":
        s, e = canonical(t.dir1), canonical(t.dir2)
        if not t.contains_direction(_between(s, e)):
            s, e = e, s
        return cls(t.apex, ((s, e),))

    @property
    def is_empty(self) -> bool:
        return not self.full and not self.intervals

    def contains_direction(self, w: Direction) -> bool:
        if self.full:
            return True
        w = canonical(w)
        return any(_in_arc(s, e, w) for s, e in self.intervals)

    def contains(self, p: Point) -> bool:
        if p == self.apex:
            raise ApexQuery("query point coincides with the domain apex")
        return self.contains_direction(Direction.between(self.apex, p))

    def boundaries(self) -> list[Direction]:
        return [d for iv in self.intervals for d in iv]

    def intersect(self, other: "AngularDomain") -> "AngularDomain":
        if self.apex != other.apex:
            raise ValueError("domains have different apexes")
        if self.full:
            return other
        if other.full:
            return self
        crit = sorted(set(self.boundaries() + other.boundaries()), key=direction_key)
        r = len(crit)
        keep = []
        for i in range(r):
            s, e = crit[i], crit[(i + 1) % r]
            mid = _between(s, e)
            keep.append(self.contains_direction(mid) and other.contains_direction(mid))
        return AngularDomain(self.apex, _merge(crit, keep))

    def full_circle_arcs(self) -> list[tuple[Direction, Direction]]:
        """The open arcs on the ordinary direction circle, counterclockwise."""
        if self.full:
            return []
        arcs = []
        for s, e in self.intervals:
            end = e if direction_key(s) < direction_key(e) else -e
            arcs.append((s, end))
            arcs.append((-s, -end))
        return sorted(arcs, key=lambda a: direction_key(a[0]))

    def sample_directions(self, per_interval: int = 3) -> list[Direction]:
        """Deterministic rational directions inside the domain, midpoints first."""
        if self.full:
            base = [Direction(1, 0), Direction(0, 1), Direction(1, 1), Direction(-1, 1)]
            out = list(base)
            extra = [Direction(k, 1) for k in range(2, 2 + per_interval)]
            return out + extra
        out: list[Direction] = []
        for s, e in self.intervals:
            mid = _between(s, e)
            out.append(mid)
            left, right = mid, mid
            for _ in range(per_interval):
                left = _between(s, left)
                right = _between(right, e)
                out.extend([left, right])
        return out


def _merge(crit: list[Direction], keep: list[bool]) -> tuple[tuple[Direction, Direction], ...]:
    # Adjacent surviving arcs stay separate: their shared boundary belongs to no constituent.
    r = len(crit)
    return tuple((crit[i], crit[(i + 1) % r]) for i in range(r) if keep[i])


@dataclass(frozen=True)
class CellDescriptor:
    owner: int
    constraints: tuple[HalfPlane, ...]


def cell_of(gamma: Mapping[int, Point], S: Iterable[int], v: int) -> CellDescriptor:
    """The cell of v: all points not strictly beyond any line through two vertices of S."""
    s = sorted(set(S))
    if v in s:
        raise ValueError("owner vertex must lie outside S")
    pv = gamma[v]
    cons = tuple(HalfPlane(gamma[a], gamma[b], pv) for a, b in combinations(s, 2))
    return CellDescriptor(v, cons)


def cell_contains(c: CellDescriptor, p: Point) -> bool:
    return not any(h.contains(p) for h in c.constraints)


def admissible_region(d: LayeredDrawing, v: int) -> AngularDomain:
    """Intersection of tie-shapes over pairs of v's edges sharing a color."""
    pv = d.gamma[v]
    nbrs = sorted(d.graph.neighbors(v))
    dom = AngularDomain.whole(pv)
    for a, b in combinations(nbrs, 2):
        if d.chi[edge(v, a)] != d.chi[edge(v, b)]:
            continue
        t = TieShape(pv, Direction.between(pv, d.gamma[a]), Direction.between(pv, d.gamma[b]))
        dom = dom.intersect(AngularDomain.from_tie(t))
        if dom.is_empty:
            break
    return dom


def can_clone_in_cell(d: LayeredDrawing, S: Iterable[int], v: int) -> bool:
    return not admissible_region(d, v).is_empty


def _cell_exit_distance2(cell: CellDescriptor, p: Point, w: Direction) -> Fraction | None:
    """Squared distance from p along w (either sense) to the nearest cell boundary line."""
    best = None
    for h in cell.constraints:
        ax, ay = h.b.x - h.a.x, h.b.y - h.a.y
        den = cross(ax, ay, w.dx, w.dy)
        if den == 0:
            continue
        t = cross(ax, ay, p.x - h.a.x, p.y - h.a.y) / den
        d2 = t * t * (w.dx * w.dx + w.dy * w.dy)
        best = d2 if best is None or d2 < best else best
    return best


def insert_clone(
    d: LayeredDrawing, S: Iterable[int], v: int, new_id: int, max_halvings: int = 60
) -> LayeredDrawing:
    """Add a clone of v inside its cell and admissible region.

    The clone sits at distance r along an admissible direction, where r starts
    at half the smaller of v's clearance and its distance to the cell boundary
    in that direction, and is halved until the placement validates.
    """
    if new_id in d.graph.vertices:
        raise ValueError(f"vertex id {new_id} already in use")
    dom = admissible_region(d, v)
    if dom.is_empty:
        raise NotCloneable(f"vertex {v} has an empty admissible region")
    S = sorted(set(S))
    cell = cell_of(d.gamma, S, v) if len(S) >= 2 else CellDescriptor(v, ())
    pv = d.gamma[v]
    nbrs = sorted(d.graph.neighbors(v))
    g2 = d.graph.add([new_id], [(new_id, u) for u in nbrs])
    chi2 = dict(d.chi)
    for u in nbrs:
        chi2[edge(new_id, u)] = d.chi[edge(v, u)]
    clear2 = clearance_radius2(d.gamma, d.graph, v) or Fraction(1)
    for w in dom.sample_directions():
        limit2 = clear2
        exit2 = _cell_exit_distance2(cell, pv, w)
        if exit2 is not None and exit2 / 4 < limit2:
            limit2 = exit2 / 4
        if limit2 == 0:
            continue
        # Chosen so that the offset step * w has length at most sqrt(limit2).
        step = pow2_floor_sqrt(limit2 / (w.dx * w.dx + w.dy * w.dy))
        for _ in range(max_halvings):
            p = Point(pv.x + w.dx * step, pv.y + w.dy * step)
            if dom.contains(p) and cell_contains(cell, p):
                gamma2 = dict(d.gamma)
                gamma2[new_id] = p
                cand = LayeredDrawing(g2, gamma2, chi2, d.layers)
                if vertex_placement_ok(cand, new_id):
                    return cand
            step /= 2
    raise NotCloneable(f"no valid clone placement found for vertex {v}")
