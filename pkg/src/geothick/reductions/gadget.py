"""Choice gadgets: red polygonal barriers that confine a vertex to a few small regions.

A gadget for a part with ``n`` choices has three anchors.  Each anchor sits
inside a red triangle-like path with a gap; a vertex joined to all three
anchors by red edges must see every anchor through its gap, which only
happens inside one of ``n`` thin regions around the middle points.

Coordinates are built in a local frame where the middle points lie on the
x-axis and the gadget's apex (the polygon centre after composition) lies on
the positive y-axis.  :meth:`ChoiceGadget.placed` applies a rigid motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParameterOutOfRange
from ..geometry import (
    Point,
    convex_polygon_clip,
    dist2,
    line_intersection,
    orient,
    rotate,
)

# Rational lower bound for sqrt(2) used in the opening of the down cones.
SQRT2_LOW = Fraction(1414, 1000)


@dataclass(frozen=True)
class Cone:
    """Open convex cone at ``apex`` between the rays towards ``p1`` and ``p2``."""

    apex: Point
    p1: Point
    p2: Point

    def halfplanes(self) -> list[tuple[Point, Point, int]]:
        return [
            (self.apex, self.p1, orient(self.apex, self.p1, self.p2)),
            (self.apex, self.p2, orient(self.apex, self.p2, self.p1)),
        ]

    def contains(self, q: Point) -> bool:
        return all(orient(a, b, q) == side for a, b, side in self.halfplanes())

    def mapped(self, f) -> "Cone":
        return Cone(f(self.apex), f(self.p1), f(self.p2))


def epsilon_bound(sizes: list[int]) -> Fraction:
    """Largest admissible region radius for the given part sizes."""
    return min(Fraction(3, 2 * n) for n in sizes)


def apex_height(k: int, s: Fraction) -> Fraction:
    """Rational height of the gadget apex, rounded up from 5s/tan(pi/k).

    Rounding up makes the apex angle slightly smaller than 2pi/k, so gadgets
    composed around a polygon never overlap.
    """
    ideal = 5 / math.tan(math.pi / k)
    return s * (Fraction(ideal).limit_denominator(10**6) + Fraction(1, 10**6))


@dataclass(frozen=True)
class ChoiceGadget:
    index: int
    size: int
    s: Fraction
    epsilon: Fraction
    anchors: dict[str, Point]
    points: dict[str, Point]
    red_paths: tuple[tuple[str, ...], ...]
    middle: tuple[Point, ...]
    regions: tuple[tuple[Cone, Cone, Cone], ...]
    hull: tuple[Point, ...]

    def red_edges(self) -> list[tuple[str, str]]:
        return [(p[i], p[i + 1]) for p in self.red_paths for i in range(len(p) - 1)]

    def red_segments(self) -> list[tuple[Point, Point]]:
        return [(self.points[a], self.points[b]) for a, b in self.red_edges()]

    def in_region(self, j: int, q: Point) -> bool:
        return all(c.contains(q) for c in self.regions[j])

    def region_index(self, q: Point) -> int | None:
        for j in range(self.size):
            if self.in_region(j, q):
                return j
        return None

    def region_polygon(self, j: int) -> list[Point]:
        """Corners of the closure of region j."""
        big = 100 * self.s
        cx, cy = self.middle[j].x, self.middle[j].y
        poly = [Point(cx - big, cy - big), Point(cx + big, cy - big), Point(cx + big, cy + big), Point(cx - big, cy + big)]
        for cone in self.regions[j]:
            for a, b, side in cone.halfplanes():
                poly = convex_polygon_clip(poly, a, b, side)
        return poly

    def region_interior_point(self, j: int) -> Point:
        poly = self.region_polygon(j)
        n = len(poly)
        return Point(sum(p.x for p in poly) / n, sum(p.y for p in poly) / n)

    def mapped(self, f) -> "ChoiceGadget":
        return ChoiceGadget(
            self.index,
            self.size,
            self.s,
            self.epsilon,
            {k: f(p) for k, p in self.anchors.items()},
            {k: f(p) for k, p in self.points.items()},
            self.red_paths,
            tuple(f(p) for p in self.middle),
            tuple(tuple(c.mapped(f) for c in r) for r in self.regions),
            tuple(f(p) for p in self.hull),
        )

    def placed(self, c: Fraction, s: Fraction, shift: Point) -> "ChoiceGadget":
        """Move the apex to the origin, rotate by (c, s), then translate by ``shift``."""
        apex = self.hull[2]
        return self.mapped(lambda p: rotate(p - apex, c, s) + shift)


def _zeta(eps: Fraction, tan_alpha: Fraction | None) -> Fraction:
    """Nine tenths of a rational lower estimate of (-eps + sqrt2 eps tan a) / (2 tan a)."""
    if tan_alpha is None:  # vertical line: the limit value eps / sqrt2
        low = SQRT2_LOW * eps / 2
    else:
        low = (-eps + SQRT2_LOW * eps * tan_alpha) / (2 * tan_alpha)
    if low <= 0:
        raise ParameterOutOfRange("down-cone opening would be empty")
    return low * Fraction(9, 10)


def build_choice_gadget(
    i: int, sizes: list[int], s, eps, *, polygon_sides: int | None = None, check_bounds: bool = True
) -> ChoiceGadget:
    """Gadget for part ``i`` (0-based) in local coordinates.

    ``polygon_sides`` sets the apex angle (defaults to ``len(sizes)``).
    ``check_bounds=False`` admits out-of-range radii for negative controls.
    """
    s, eps = Fraction(s), Fraction(eps)
    if not 0 <= i < len(sizes):
        raise ParameterOutOfRange(f"part index {i} outside 0..{len(sizes) - 1}")
    n = sizes[i]
    if n < 1:
        raise ParameterOutOfRange("every part needs at least one vertex")
    if s < 1:
        raise ParameterOutOfRange("scale must be at least 1")
    if eps <= 0 or (check_bounds and eps > epsilon_bound(sizes)):
        raise ParameterOutOfRange(f"region radius {eps} outside (0, {epsilon_bound(sizes)}]")
    k = polygon_sides or len(sizes)
    if k < 3:
        raise ParameterOutOfRange("gadgets are composed around a polygon with at least 3 sides")

    P = lambda x, y: Point(s * Fraction(x), s * Fraction(y))
    a_l, a_r, a_d = P(-4, 0), P(4, 0), P(0, -2)
    pts: dict[str, Point] = {
        "t_l_u": P(-3, Fraction(3, 4)),
        "t_l_d": P(-3, Fraction(-3, 4)),
        "t_l_l": P(Fraction(-19, 4), 0),
        "t_d_d": P(0, -3),
        "t_d_l": P(Fraction(-3, 2), -1),
        "t_d_r": P(Fraction(3, 2), -1),
        "t_r_u": P(3, Fraction(3, 4)),
        "t_r_d": P(3, Fraction(-3, 4)),
        "t_r_r": P(Fraction(19, 4), 0),
    }
    # Side barriers: where the line from the anchor to (0, +-eps/4) meets x = anchor.x +- s.
    top, bot = Point(0, eps / 4), Point(0, -eps / 4)
    pts["t_l_b1"] = line_intersection(a_l, top, P(-3, 0), P(-3, 1))
    pts["t_l_b2"] = line_intersection(a_l, bot, P(-3, 0), P(-3, 1))
    pts["t_r_b1"] = line_intersection(a_r, top, P(3, 0), P(3, 1))
    pts["t_r_b2"] = line_intersection(a_r, bot, P(3, 0), P(3, 1))

    if n == 1:
        middle = [Point(0, 0)]
    else:
        middle = [P(Fraction(4 * j, n - 1) - 2, 0) for j in range(n)]
    upper_line = (Point(0, eps / 4), Point(1, eps / 4))
    lower_line = (Point(0, -eps / 4), Point(1, -eps / 4))
    for j, m in enumerate(middle):
        m_star = line_intersection(a_d, m, *upper_line) if m.x != 0 else Point(0, eps / 4)
        tan_alpha = None if m.x == 0 else (m.y - a_d.y) / abs(m.x - a_d.x)
        half = _zeta(eps, tan_alpha) / 2
        for idx, dx in ((2 * j + 1, -half), (2 * j + 2, half)):
            target = Point(m_star.x + dx, m_star.y)
            pts[f"t_d_b{idx}"] = line_intersection(a_d, target, *lower_line)

    paths = [
        ("t_l_b1", "t_l_u", "t_l_l", "t_l_d", "t_l_b2"),
        ("t_r_b1", "t_r_u", "t_r_r", "t_r_d", "t_r_b2"),
        ("t_d_b1", "t_d_l", "t_d_d", "t_d_r", f"t_d_b{2 * n}"),
    ]
    paths += [(f"t_d_b{2 * j}", f"t_d_b{2 * j + 1}") for j in range(1, n)]

    r_l = Cone(a_l, pts["t_l_b1"], pts["t_l_b2"])
    r_r = Cone(a_r, pts["t_r_b1"], pts["t_r_b2"])
    regions = tuple((r_l, r_r, Cone(a_d, pts[f"t_d_b{2 * j + 1}"], pts[f"t_d_b{2 * j + 2}"])) for j in range(n))
    hull = (P(-5, 0), P(0, Fraction(-13, 4)), Point(0, apex_height(k, s)), P(5, 0))
    g = ChoiceGadget(
        i, n, s, eps, {"a_l": a_l, "a_d": a_d, "a_r": a_r}, pts, tuple(paths), tuple(middle), regions, hull
    )
    for j in range(n):
        if not g.in_region(j, middle[j]):
            raise ParameterOutOfRange(f"middle point {j} is not inside its region")
    return g


def region_disk_report(gadgets: list[ChoiceGadget]) -> list[str]:
    """Exact checks that every region lies in its disk and all disks are pairwise disjoint."""
    failures: list[str] = []
    disks = []
    for g in gadgets:
        e2 = g.epsilon * g.epsilon
        for j, m in enumerate(g.middle):
            for p in g.region_polygon(j):
                if dist2(p, m) > e2:
                    failures.append(f"gadget {g.index} region {j}: corner {p} outside the disk")
                    break
            disks.append((g.index, j, m, g.epsilon))
    for a in range(len(disks)):
        for b in range(a + 1, len(disks)):
            ga, ja, ma, ea = disks[a]
            gb, jb, mb, eb = disks[b]
            if dist2(ma, mb) <= (ea + eb) ** 2:
                failures.append(f"disks ({ga},{ja}) and ({gb},{jb}) intersect")
    return failures
