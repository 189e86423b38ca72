"""Exact rational geometric predicates.

Every coordinate is a :class:`fractions.Fraction`; nothing in this module
rounds.  Predicates return exact signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CollinearOverlap, DuplicatePoint

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    Floats are rejected because they silently carry binary rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if type(self.x) is not Fraction:
            object.__setattr__(self, "x", as_rational(self.x))
        if type(self.y) is not Fraction:
            object.__setattr__(self, "y", as_rational(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, factor) -> "Point":
        f = as_rational(factor)
        return Point(self.x * f, self.y * f)

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({format_rational(self.x)}, {format_rational(self.y)})"


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def lerp(p: Point, q: Point, t) -> Point:
    t = as_rational(t)
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)


@dataclass(frozen=True, slots=True)
class Direction:
    """A ray direction, stored as a primitive integer vector.

    Two directions compare equal iff they describe the same ray.
    """

    dx: Fraction
    dy: Fraction

    def __post_init__(self):
        dx, dy = as_rational(self.dx), as_rational(self.dy)
        if dx == 0 and dy == 0:
            raise ValueError("zero vector has no direction")
        den = math.lcm(dx.denominator, dy.denominator)
        ix, iy = int(dx * den), int(dy * den)
        g = math.gcd(ix, iy)
        object.__setattr__(self, "dx", Fraction(ix // g))
        object.__setattr__(self, "dy", Fraction(iy // g))

    @classmethod
    def between(cls, origin: Point, target: Point) -> "Direction":
        return cls(target.x - origin.x, target.y - origin.y)

    def __neg__(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def as_point(self) -> Point:
        return Point(self.dx, self.dy)

    def __repr__(self):
        return f"Direction({self.dx}, {self.dy})"


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def orient(p: Point, q: Point, r: Point) -> int:
    """+1 if r lies strictly left of the directed line p->q, -1 if right, 0 if collinear."""
    return _sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def _within_box(p: Point, a: Point, b: Point) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def on_open_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on segment ab strictly between its endpoints."""
    if p == a or p == b:
        return False
    return orient(a, b, p) == 0 and _within_box(p, a, b)


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper crossing test for segments ab and cd.

    Segments that only share an endpoint never cross.  Collinear segments
    overlapping in more than one point raise :class:`CollinearOverlap`.
    """
    if a == b or c == d:
        raise ValueError("degenerate segment")
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 == 0 and o2 == 0:
        if _collinear_overlap(a, b, c, d):
            raise CollinearOverlap(f"segments {a}-{b} and {c}-{d} overlap")
        return False
    if {a, b} & {c, d}:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def _collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    # Project onto the dominant axis of ab; overlap length > 0 means more than one shared point.
    if a.x != b.x:
        lo1, hi1 = sorted((a.x, b.x))
        lo2, hi2 = sorted((c.x, d.x))
    else:
        lo1, hi1 = sorted((a.y, b.y))
        lo2, hi2 = sorted((c.y, d.y))
    return min(hi1, hi2) > max(lo1, lo2)


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Fraction | None:
    """Parameter t in (0, 1) along ab where the lines ab and cd meet, if the segments cross."""
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    den = cross(rx, ry, sx, sy)
    if den == 0:
        return None
    t = cross(c.x - a.x, c.y - a.y, sx, sy) / den
    u = cross(c.x - a.x, c.y - a.y, rx, ry) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return t
    return None


def in_general_position(points: Iterable[Point]) -> bool:
    """True iff no three of the (pairwise distinct) points are collinear."""
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("two points coincide")
    return not collinear_triples_exist(pts)


def collinear_triples_exist(pts: Sequence[Point]) -> bool:
    grid = integer_grid(pts)
    n = len(grid)
    if n < 3:
        return False
    if n <= 12:
        return any(_iorient(p, q, r) == 0 for p, q, r in combinations(grid, 3))
    for i in range(n):
        if _has_repeated_line(grid, i):
            return True
    return False


def collinear_with(pts: Sequence[Point], index: int) -> bool:
    """True iff ``pts[index]`` is collinear with some pair of the other points."""
    grid = integer_grid(pts)
    return _has_repeated_line(grid, index)


def _has_repeated_line(grid, i) -> bool:
    px, py = grid[i]
    seen = set()
    for j, (qx, qy) in enumerate(grid):
        if j == i:
            continue
        dx, dy = qx - px, qy - py
        g = math.gcd(dx, dy)
        dx, dy = dx // g, dy // g
        if dx < 0 or (dx == 0 and dy < 0):
            dx, dy = -dx, -dy
        if (dx, dy) in seen:
            return True
        seen.add((dx, dy))
    return False


def integer_grid(pts: Sequence[Point]) -> list[tuple[int, int]]:
    """Scale all points by the lcm of their denominators.

    Orientation signs are invariant under this uniform positive scaling, so
    predicates may then run on plain integers.
    """
    den = 1
    for p in pts:
        den = math.lcm(den, p.x.denominator, p.y.denominator)
    return [(int(p.x * den), int(p.y * den)) for p in pts]


def _iorient(p, q, r) -> int:
    return _sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def _upper(dx, dy) -> bool:
    return dy > 0 or (dy == 0 and dx > 0)


def compare_directions_ccw(d1: Direction, d2: Direction) -> int:
    """Order by counterclockwise angle from the positive x-axis: -1, 0 or +1."""
    h1, h2 = _upper(d1.dx, d1.dy), _upper(d2.dx, d2.dy)
    if h1 != h2:
        return -1 if h1 else 1
    c = cross(d1.dx, d1.dy, d2.dx, d2.dy)
    return -_sign(c)


direction_key = cmp_to_key(compare_directions_ccw)


def dist2(p: Point, q: Point) -> Fraction:
    dx, dy = p.x - q.x, p.y - q.y
    return dx * dx + dy * dy


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    """Squared Euclidean distance from p to the closed segment ab."""
    vx, vy = b.x - a.x, b.y - a.y
    wx, wy = p.x - a.x, p.y - a.y
    vv = vx * vx + vy * vy
    t = (wx * vx + wy * vy) / vv
    if t <= 0:
        return wx * wx + wy * wy
    if t >= 1:
        return dist2(p, b)
    cx, cy = wx - t * vx, wy - t * vy
    return cx * cx + cy * cy


def segment_segment_dist2(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    """Squared distance between closed segments ab and cd (0 if they meet)."""
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return Fraction(0)
    return min(
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    )


def sqrt_lower(q, bits: int = 40) -> Fraction:
    """A rational r with 0 <= r <= sqrt(q), accurate to about 2**-bits relative."""
    q = as_rational(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    scale = 1 << bits
    num = q.numerator * q.denominator * scale * scale
    return Fraction(math.isqrt(num), q.denominator * scale)


def sqrt_upper(q, bits: int = 40) -> Fraction:
    q = as_rational(q)
    lo = sqrt_lower(q, bits)
    if lo * lo == q:
        return lo
    scale = 1 << bits
    return lo + Fraction(1, q.denominator * scale)


def convex_polygon_clip(poly: list[Point], a: Point, b: Point, side: int) -> list[Point]:
    """Clip a convex polygon to the closed half-plane where orient(a, b, .) has sign ``side`` or 0."""
    out: list[Point] = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        sp, sq = orient(a, b, p) * side, orient(a, b, q) * side
        if sp >= 0:
            out.append(p)
        if sp * sq < 0:
            rx, ry = q.x - p.x, q.y - p.y
            sx, sy = b.x - a.x, b.y - a.y
            t = cross(a.x - p.x, a.y - p.y, sx, sy) / cross(rx, ry, sx, sy)
            out.append(Point(p.x + t * rx, p.y + t * ry))
    dedup: list[Point] = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def rational_unit_vector(angle: float, max_den: int = 10**6) -> tuple[Fraction, Fraction]:
    """An exact rational point on the unit circle close to (cos angle, sin angle).

    Uses the rational parametrisation ((1-t^2)/(1+t^2), 2t/(1+t^2)) with
    t ~ tan(angle/2), so the result is an exact isometry when used as a rotation.
    """
    a = math.remainder(angle, 2 * math.pi)
    if abs(abs(a) - math.pi) < 1e-15:
        return Fraction(-1), Fraction(0)
    t = Fraction(math.tan(a / 2)).limit_denominator(max_den)
    den = 1 + t * t
    return (1 - t * t) / den, 2 * t / den


def pow2_floor_sqrt(q2) -> Fraction:
    """The largest power of two r (possibly negative exponent) with r*r <= q2, for q2 > 0.

    Powers of two keep denominators small when used as step sizes.
    """
    q2 = as_rational(q2)
    if q2 <= 0:
        raise ValueError("argument must be positive")
    j = (q2.numerator.bit_length() - q2.denominator.bit_length()) // 2 + 1
    r = Fraction(2) ** j
    while r * r > q2:
        r /= 2
    return r


def line_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Point:
    """Intersection point of the lines p1p2 and q1q2 (which must not be parallel)."""
    rx, ry = p2.x - p1.x, p2.y - p1.y
    sx, sy = q2.x - q1.x, q2.y - q1.y
    den = cross(rx, ry, sx, sy)
    if den == 0:
        raise ValueError("parallel lines")
    t = cross(q1.x - p1.x, q1.y - p1.y, sx, sy) / den
    return Point(p1.x + t * rx, p1.y + t * ry)


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Vertices of the convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def in_convex_polygon(p: Point, poly: Sequence[Point], strict: bool = False) -> bool:
    """Membership in a counterclockwise convex polygon (closed unless ``strict``)."""
    n = len(poly)
    for i in range(n):
        o = orient(poly[i], poly[(i + 1) % n], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def point_polygon_dist2(p: Point, poly: Sequence[Point]) -> Fraction:
    """Squared distance from p to a counterclockwise convex polygon (0 inside)."""
    if len(poly) >= 3 and in_convex_polygon(p, poly):
        return Fraction(0)
    if len(poly) == 1:
        return dist2(p, poly[0])
    return min(point_segment_dist2(p, poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly)))


def rotate(p: Point, c, s) -> Point:
    """Rotate p about the origin by the rotation with cosine c and sine s."""
    return Point(c * p.x - s * p.y, s * p.x + c * p.y)
