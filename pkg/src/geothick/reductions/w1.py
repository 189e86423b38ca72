"""Extension instances encoding Multicolored Clique.

Each part of the clique instance becomes a choice gadget on one side of a
regular polygon; its missing vertex must sit near one of the gadget's middle
points.  For every non-adjacent pair of middle points (across parts) a
bundle of parallel edges, one per non-red color, is drawn across the
corridor between them, so the missing clique edge can only be drawn when
the chosen vertices are adjacent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

from ..drawing import Edge, Graph, edge
from ..errors import DegenerateScaling, ParameterOutOfRange
from ..geometry import (
    Point,
    convex_hull,
    convex_polygon_clip,
    cross,
    rational_unit_vector,
    segment_segment_dist2,
    sqrt_lower,
)
from .gadget import ChoiceGadget, build_choice_gadget, epsilon_bound
from .instance import RED, DrawingBuilder, HardnessInstance, add_blocking_triangles, blocking_radius


class _PlacementFailed(Exception):
    pass


def find_multicolored_clique(X: Graph, partition: list[list[int]], budget: int = 10**6) -> list[int] | None:
    """One vertex per part forming a clique, or None.  Exhaustive up to ``budget`` candidates."""
    total = math.prod(len(p) for p in partition)
    if total > budget:
        raise ParameterOutOfRange(f"{total} candidate cliques exceed the budget {budget}")
    for choice in product(*partition):
        if all(X.has_edge(u, v) for u, v in combinations(choice, 2)):
            return list(choice)
    return None


def _check_partition(X: Graph, partition: list[list[int]], k: int) -> None:
    if len(partition) != k:
        raise ParameterOutOfRange(f"expected {k} parts, got {len(partition)}")
    seen: set[int] = set()
    for part in partition:
        if not part:
            raise ParameterOutOfRange("every part must be nonempty")
        if seen & set(part):
            raise ParameterOutOfRange("parts must be disjoint")
        seen |= set(part)
    if seen != set(X.vertices):
        raise ParameterOutOfRange("the parts must cover exactly the vertices of X")


def trivial_instance(positive: bool, source: str) -> HardnessInstance:
    """Fixed tiny instances standing in for inputs below the construction's domain.

    Positive: a missing edge between two drawn vertices with nothing in the way.
    Negative: convex K4 with one diagonal drawn, the other missing, one layer.
    """
    b = DrawingBuilder()
    if positive:
        u = b.vertex("u", Point(0, 0))
        v = b.vertex("v", Point(1, 0))
        e = b.add_edge(u, v, None)
        return HardnessInstance(b.gte(1), source, "SAT", "trivial", {}, {e: 1}, b.labels)
    vs = [b.vertex(f"q{i}", p) for i, p in enumerate([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])]
    for i in range(4):
        b.add_edge(vs[i], vs[(i + 1) % 4], 1)
    b.add_edge(vs[0], vs[2], 1)
    b.add_edge(vs[1], vs[3], None)
    return HardnessInstance(b.gte(1), source, "UNSAT", "trivial", labels=b.labels)


# --- scaling -------------------------------------------------------------------


def _place_gadgets(sizes: list[int], s: Fraction, eps: Fraction) -> list[ChoiceGadget]:
    k = len(sizes)
    out = []
    for i in range(k):
        c, sn = rational_unit_vector(2 * math.pi * i / k) if i else (Fraction(1), Fraction(0))
        out.append(build_choice_gadget(i, sizes, s, eps).placed(c, sn, Point(0, 0)))
    return out


def _acute(ux, uy, vx, vy) -> float:
    ang = abs(math.atan2(ux * vy - uy * vx, ux * vx + uy * vy))
    return min(ang, math.pi - ang)


def initial_scale(sizes: list[int], non_edges: list[tuple[tuple[int, int], tuple[int, int]]], eps: Fraction) -> Fraction:
    """Scale from the forbidden-length estimate max (f_e + 1) / l_e, evaluated in floating point."""
    gadgets = _place_gadgets(sizes, Fraction(1), eps)
    mids = {(g.index, j): (float(m.x), float(m.y)) for g in gadgets for j, m in enumerate(g.middle)}
    sides = {}
    for g in gadgets:
        a, b = g.hull[0], g.hull[3]
        sides[g.index] = (float(b.x - a.x), float(b.y - a.y))
    pairs = [(p, q) for p, q in combinations(sorted(mids), 2) if p[0] != q[0]]
    e = float(eps)
    best = 1.0
    for p, q in non_edges:
        (x1, y1), (x2, y2) = mids[p], mids[q]
        dx, dy = x2 - x1, y2 - y1
        length = math.hypot(dx, dy)
        f = 2 * e
        for gi in (p[0], q[0]):
            beta = _acute(dx, dy, *sides[gi])
            f += e / math.tan(beta) if beta > 1e-12 else float("inf")
        for r, t in pairs:
            if {r, t} == {p, q}:
                continue
            (x3, y3), (x4, y4) = mids[r], mids[t]
            shared = len({r, t} & {p, q}) == 1
            o = lambda ax, ay, bx, by, cx, cy: (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            crosses = (
                o(x1, y1, x2, y2, x3, y3) * o(x1, y1, x2, y2, x4, y4) < 0
                and o(x3, y3, x4, y4, x1, y1) * o(x3, y3, x4, y4, x2, y2) < 0
            )
            if shared or crosses:
                gamma = _acute(dx, dy, x4 - x3, y4 - y3)
                f += (1 / math.tan(gamma) + 1 / math.sin(gamma)) if gamma > 1e-12 else float("inf")
        best = max(best, (f + 1) / length)
    if not math.isfinite(best):
        raise DegenerateScaling("collinear corridors cannot be separated by scaling")
    return Fraction(math.ceil(best))


# --- blocking bundles ----------------------------------------------------------------


def _tw(m: Point, D: Point, nv: Point, z: Point) -> Point:
    """Coordinates (t, w) with z = m + t D + w nv."""
    den = cross(D.x, D.y, nv.x, nv.y)
    rx, ry = z.x - m.x, z.y - m.y
    return Point(cross(rx, ry, nv.x, nv.y) / den, cross(D.x, D.y, rx, ry) / den)


_W_HI = (Point(0, 1), Point(1, 1))
_W_LO = (Point(0, -1), Point(1, -1))


def _strip_range(poly_tw: list[Point]) -> tuple[Fraction, Fraction] | None:
    """Range of t over the part of a convex set (in t, w coordinates) with |w| <= 1."""
    clipped = convex_polygon_clip(list(poly_tw), *_W_HI, -1)
    clipped = convex_polygon_clip(clipped, *_W_LO, 1) if clipped else []
    if not clipped:
        return None
    ts = [p.x for p in clipped]
    return min(ts), max(ts)


def _line_range(poly_tw: list[Point], w0: Fraction) -> tuple[Fraction, Fraction] | None:
    ts = []
    n = len(poly_tw)
    for i in range(n):
        p, q = poly_tw[i], poly_tw[(i + 1) % n]
        if p.y == w0:
            ts.append(p.x)
        if (p.y - w0) * (q.y - w0) < 0:
            ts.append(p.x + (w0 - p.y) / (q.y - p.y) * (q.x - p.x))
    return (min(ts), max(ts)) if ts else None


def capsule_box(m: Point, m2: Point, eps: Fraction) -> list[Point]:
    """A rectangle containing every point within ``eps`` of segment m m2."""
    D = m2 - m
    L = sqrt_lower(D.x * D.x + D.y * D.y, 24)
    u = D.scale(eps / L)
    n = Point(-u.y, u.x)
    return [m - u - n, m2 + u - n, m2 + u + n, m - u + n]


def _place_bundle(builder, m, m2, eps, count, polygon, tunnel_boxes) -> list[tuple[Point, Point]]:
    D = m2 - m
    L = sqrt_lower(D.x * D.x + D.y * D.y, 24)
    nv = Point(-D.y, D.x).scale(eps / L)
    end = eps / L
    lo, hi = end, 1 - end
    poly_tw = [_tw(m, D, nv, p) for p in polygon]
    for w0 in (Fraction(1), Fraction(-1)):
        rng = _line_range(poly_tw, w0)
        if rng is None:
            raise _PlacementFailed("corridor leaves the polygon")
        lo, hi = max(lo, rng[0]), min(hi, rng[1])
    forbidden = []
    for a, b in builder.segments():
        r = _strip_range([_tw(m, D, nv, a), _tw(m, D, nv, b)])
        if r:
            forbidden.append(r)
    for box in tunnel_boxes:
        r = _strip_range([_tw(m, D, nv, p) for p in box])
        if r:
            forbidden.append(r)
    forbidden.sort()
    cur = lo
    gap = None
    for a, b in forbidden:
        if a > cur and min(a, hi) > cur:
            gap = (cur, min(a, hi))
            break
        cur = max(cur, b)
        if cur >= hi:
            break
    if gap is None and cur < hi:
        gap = (cur, hi)
    if gap is None:
        raise _PlacementFailed("forbidden segments cover the corridor")
    g0, g1 = gap
    chords = []
    for i in range(1, count + 1):
        t = g0 + (g1 - g0) * Fraction(i, count + 1)
        c = Point(m.x + t * D.x, m.y + t * D.y)
        chords.append((c - nv, c + nv))
    return chords


def blocks_corridor(p: Point, q: Point, m: Point, m2: Point, eps: Fraction) -> bool:
    """Exact check that segment pq cuts every segment between the eps-disks around m and m2."""
    D = m2 - m
    c = Point((p.x + q.x) / 2, (p.y + q.y) / 2)
    v = q - p
    if v.x * D.x + v.y * D.y != 0 or cross(D.x, D.y, c.x - m.x, c.y - m.y) != 0:
        return False
    dd = D.x * D.x + D.y * D.y
    t = ((c.x - m.x) * D.x + (c.y - m.y) * D.y) / dd
    e2 = eps * eps
    half2 = (v.x * v.x + v.y * v.y) / 4
    return 0 < t < 1 and t * t * dd > e2 and (1 - t) ** 2 * dd > e2 and half2 >= e2


# --- main generator -----------------------------------------------------------------


def _compose(X: Graph, partition: list[list[int]], k: int, s: Fraction, eps: Fraction, clique) -> HardnessInstance:
    sizes = [len(p) for p in partition]
    C = k * (k - 1) // 2
    layers = C + 1
    nonred = list(range(2, layers + 1))
    gadgets = _place_gadgets(sizes, s, eps)
    b = DrawingBuilder()
    anchor_ids: list[dict[str, int]] = []
    for g in gadgets:
        ids = {name: b.vertex(f"g{g.index}.{name}", p) for name, p in sorted(g.points.items())}
        for u, v in g.red_edges():
            b.add_edge(ids[u], ids[v], RED)
        anchor_ids.append({name: b.vertex(f"g{g.index}.{name}", p) for name, p in sorted(g.anchors.items())})
    gadget_vertices = sorted(b.gamma)

    polygon = convex_hull(p for g in gadgets for p in (g.hull[0], g.hull[3]))
    mids = {(g.index, j): m for g in gadgets for j, m in enumerate(g.middle)}
    owner = {x: (i, j) for i, part in enumerate(partition) for j, x in enumerate(part)}
    pairs = [(p, q) for p, q in combinations(sorted(mids), 2) if p[0] != q[0]]
    is_edge = {(p, q): X.has_edge(partition[p[0]][p[1]], partition[q[0]][q[1]]) for p, q in pairs}
    boxes = {pq: capsule_box(mids[pq[0]], mids[pq[1]], eps) for pq in pairs}

    blocking: dict[tuple[int, int], list[Edge]] = {}
    for p, q in pairs:
        if is_edge[(p, q)]:
            continue
        m, m2 = mids[p], mids[q]
        avoid = []
        for other in pairs:
            if other == (p, q):
                continue
            shared = len(set(other) & {p, q}) == 1
            if is_edge[other] or shared or segment_segment_dist2(m, m2, mids[other[0]], mids[other[1]]) == 0:
                avoid.append(boxes[other])
        chords = _place_bundle(b, m, m2, eps, C, polygon, avoid)
        key = edge(partition[p[0]][p[1]], partition[q[0]][q[1]])
        blocking[key] = []
        for col, (a, z) in zip(nonred, chords):
            u = b.vertex(f"blk{key}.{col}a", a)
            v = b.vertex(f"blk{key}.{col}b", z)
            blocking[key].append(b.add_edge(u, v, col))

    tunnels = [(mids[p], mids[q]) for p, q in pairs]
    for g, ids in zip(gadgets, anchor_ids):
        for name in ("a_d", "a_l", "a_r"):
            a = g.anchors[name]
            radius = blocking_radius(b, a, tunnels, eps)
            rays = [m - a for m in g.middle]
            add_blocking_triangles(b, ids[name], nonred, radius, rays, f"g{g.index}.{name}")

    clique_ids = [b.vertex(f"c{i}", None) for i in range(k)]
    for i in range(k):
        for name in ("a_d", "a_l", "a_r"):
            b.add_edge(clique_ids[i], anchor_ids[i][name], None)
    for i, j in combinations(range(k), 2):
        b.add_edge(clique_ids[i], clique_ids[j], None)

    inst = b.gte(layers)
    hi = HardnessInstance(
        inst,
        "mcc",
        "SAT" if clique else "UNSAT",
        "witness" if clique else "asserted-by-reduction",
        labels=b.labels,
        gadgets=gadgets,
        gadget_vertices=gadget_vertices,
        anchor_ids=anchor_ids,
        blocking=blocking,
        middle_ids={x: owner[x] for x in owner},
        meta={"k": k, "scale": s, "epsilon": eps, "clique_vertices": clique_ids},
    )
    if clique:
        hi.witness_positions, hi.witness_colors = clique_witness(hi, clique)
    return hi


def clique_witness(hi: HardnessInstance, clique: list[int]) -> tuple[dict[int, Point], dict[Edge, int]]:
    """Clique vertices at the chosen middle points, anchor edges red, clique edges distinct colors."""
    cids = hi.meta["clique_vertices"]
    pos, cols = {}, {}
    for x in clique:
        i, j = hi.middle_ids[x]
        pos[cids[i]] = hi.gadgets[i].middle[j]
        for name in ("a_d", "a_l", "a_r"):
            cols[edge(cids[i], hi.anchor_ids[i][name])] = RED
    for col, (i, j) in enumerate(combinations(range(len(cids)), 2), start=2):
        cols[edge(cids[i], cids[j])] = col
    return pos, cols


def gen_w1_instance(
    X: Graph, partition: list[list[int]], k: int, *, scale=None, max_doublings: int = 6
) -> HardnessInstance:
    """Build the extension instance for a Multicolored Clique instance (X, partition, k)."""
    partition = [sorted(p) for p in partition]
    _check_partition(X, partition, k)
    try:
        clique = find_multicolored_clique(X, partition)
        known = True
    except ParameterOutOfRange:
        clique, known = None, False
    if k < 3:
        if not known:
            raise ParameterOutOfRange("too many candidates to decide a small-k instance")
        return trivial_instance(clique is not None, "mcc")
    sizes = [len(p) for p in partition]
    eps = epsilon_bound(sizes)
    mids = [(i, j) for i, n in enumerate(sizes) for j in range(n)]
    non_edges = [
        (p, q)
        for p, q in combinations(mids, 2)
        if p[0] != q[0] and not X.has_edge(partition[p[0]][p[1]], partition[q[0]][q[1]])
    ]
    s = Fraction(scale) if scale is not None else initial_scale(sizes, non_edges, eps)
    last = None
    for _ in range(max_doublings + 1):
        try:
            hi = _compose(X, partition, k, s, eps, clique)
            if not known:
                hi.expected, hi.certainty = "UNKNOWN", "undecided"
            return hi
        except _PlacementFailed as exc:
            last = exc
            s *= 2
    raise DegenerateScaling(f"blocking edges could not be placed up to scale {s / 2}: {last}")
