from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import settings

from geothick.drawing import Graph, LayeredDrawing, edge
from geothick.geometry import Point

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def P(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def convex_k4(diagonal_colors=(1, 1), layers=None) -> LayeredDrawing:
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    gamma = {0: P(0, 0), 1: P(4, 0), 2: P(4, 4), 3: P(0, 4)}
    chi = {e: 1 for e in g.edges}
    chi[(0, 2)], chi[(1, 3)] = diagonal_colors
    return LayeredDrawing(g, gamma, chi, layers or max(diagonal_colors))


def random_general_position(n: int, rng: random.Random, size: int = 60) -> dict[int, Point]:
    from geothick.geometry import orient

    pts: list[Point] = []
    while len(pts) < n:
        p = P(rng.randrange(size), rng.randrange(size))
        if p in pts:
            continue
        if any(orient(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        pts.append(p)
    return dict(enumerate(pts))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(es, n)


def random_gte_instance(rng: random.Random, max_missing: int = 3, max_layers: int = 3):
    """A seeded extension instance with only edges missing: <= 8 vertices, k <= 3, layers <= 3."""
    from geothick.drawing import min_layers_fixed_drawing, validate
    from geothick.gte import GteInstance

    while True:
        n = rng.randint(3, 8)
        g = random_graph(n, rng.uniform(0.3, 0.8), rng)
        gamma = random_general_position(n, rng, size=30)
        layers = rng.randint(1, max_layers)
        missing = rng.sample(g.sorted_edges(), min(rng.randint(0, max_missing), g.m))
        h = g.remove_edges(missing)
        pred = LayeredDrawing(h, gamma, {e: rng.randint(1, layers) for e in h.edges}, layers)
        if not validate(pred).is_empty:
            best, chi = min_layers_fixed_drawing(h, gamma)
            if best > layers:
                continue
            pred = LayeredDrawing(h, gamma, chi, layers)
        return GteInstance(g, pred)


# --- acceptance reporting ------------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}
_PROPERTY_OUTCOMES = {"passed": 0, "failed": 0, "skipped": 0}


def record_criterion(name: str, ok: bool, detail: str) -> str:
    line = f"{name} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE[name] = (ok, line)
    print(line)
    return line


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _PROPERTY_OUTCOMES[report.outcome] = _PROPERTY_OUTCOMES.get(report.outcome, 0) + 1


def property_suite_outcomes() -> dict[str, int]:
    return dict(_PROPERTY_OUTCOMES)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    if "C11" in ACCEPTANCE:
        # The disclaimer criterion rests on the property suites, which finish after it runs.
        out = property_suite_outcomes()
        counts = f"{out['passed']} passed, {out['failed']} failed, {out['skipped']} skipped"
        if out["passed"] + out["failed"] == 0:
            ACCEPTANCE["C11"] = (False, "C11 NOT EVALUATED: property suites were not run in this session")
        else:
            ok = out["failed"] == 0
            ACCEPTANCE["C11"] = (ok, f"C11 {'PASS' if ok else 'FAIL'}: asymptotic claims rest on the property suites ({counts})")
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n[1:])):
        terminalreporter.write_line(ACCEPTANCE[name][1])




def sample_np_extension(hi, rng: random.Random):
    """A candidate extension of a generated 3-SAT instance: positions for t and v and colors for their edges.

    Positions are inside the target region most of the time; colors come from a random
    assignment with a random literal per clause, and occasionally one edge gets a random color.
    """
    from geothick.reductions.sat3 import assignment_witness, literal_color

    meta = hi.meta
    t, v = meta["t"], meta["v"]
    pos = {}
    for w, g in ((t, hi.gadgets[0]), (v, hi.gadgets[1])):
        if rng.random() < 0.7:
            corners = g.region_polygon(0)
            weights = [Fraction(rng.randint(1, 100)) for _ in corners]
            total = sum(weights)
            pos[w] = Point(sum(wt * c.x for wt, c in zip(weights, corners)) / total,
                           sum(wt * c.y for wt, c in zip(weights, corners)) / total)
        else:
            pos[w] = Point(Fraction(rng.randint(1, 999), 100), Fraction(rng.randint(1, 999), 100))
    cnf = meta["cnf"]
    sigma = {i: rng.random() < 0.5 for i in range(1, cnf.num_vars + 1)}
    _, cols = assignment_witness(hi, {i: True for i in sigma})
    for i, x in enumerate(meta["variables"], start=1):
        cols[edge(t, x)] = literal_color(i if sigma[i] else -i)
    for cl, c in zip(cnf.clauses, meta["clauses"]):
        cols[edge(v, c)] = literal_color(-rng.choice(cl))
    if rng.random() < 0.25:
        e = rng.choice(sorted(cols))
        cols[e] = rng.randint(1, hi.layers)
    return pos, cols


__all__ = ["P", "convex_k4", "random_general_position", "random_graph", "random_gte_instance", "sample_np_extension", "edge"]
