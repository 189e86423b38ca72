"""Exact and sampled self-checks of generated gadget instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..geometry import Point, on_open_segment, orient, segment_segment_dist2
from .gadget import ChoiceGadget, region_disk_report
from .instance import HardnessInstance
from .w1 import blocks_corridor


@dataclass
class GadgetCheckReport:
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    samples_checked: int = 0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, failures: list[str]) -> None:
        self.checks[name] = not failures
        self.failures.extend(f"{name}: {f}" for f in failures)


def _blocked(p: Point, a: Point, reds: list[tuple[Point, Point]]) -> bool:
    """True if the segment from p to a crosses or touches a red segment away from a."""
    for u, v in reds:
        o1, o2 = orient(p, a, u), orient(p, a, v)
        o3, o4 = orient(u, v, p), orient(u, v, a)
        if o1 * o2 < 0 and o3 * o4 < 0:
            return True
        if on_open_segment(u, p, a) or on_open_segment(v, p, a) or on_open_segment(p, u, v) or p in (u, v):
            return True
    return False


def _sample_points(g: ChoiceGadget, rng: random.Random, count: int) -> list[Point]:
    xs = [q.x for q in g.hull]
    ys = [q.y for q in g.hull]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    den = 1 << 20
    out = []
    for t in range(count):
        if t % 2 == 0:
            fx, fy = Fraction(rng.randrange(den + 1), den), Fraction(rng.randrange(den + 1), den)
            out.append(Point(lo_x + fx * (hi_x - lo_x), lo_y + fy * (hi_y - lo_y)))
        else:  # near a middle point, where the regions are
            m = g.middle[rng.randrange(g.size)]
            r = 2 * g.epsilon
            fx, fy = Fraction(rng.randrange(-den, den + 1), den), Fraction(rng.randrange(-den, den + 1), den)
            out.append(Point(m.x + fx * r, m.y + fy * r))
    return out


def verify_gadget_properties(inst: HardnessInstance, samples: int = 200, seed: int = 0) -> GadgetCheckReport:
    """Check region containment, anchor blocking and corridor blocking; failures are itemized."""
    rep = GadgetCheckReport()
    rep.record("region_disks", region_disk_report(inst.gadgets))

    all_reds = [s for g in inst.gadgets for s in g.red_segments()]
    bad = []
    for g in inst.gadgets:
        for j, m in enumerate(g.middle):
            if not g.in_region(j, m):
                bad.append(f"gadget {g.index} middle point {j} outside its region")
            for name, a in g.anchors.items():
                if _blocked(m, a, all_reds):
                    bad.append(f"gadget {g.index} middle point {j}: segment to {name} is blocked")
    rep.record("middle_points_free", bad)

    rng = random.Random(seed)
    bad = []
    per = samples // max(1, len(inst.gadgets)) if samples > 0 else 0
    for g in inst.gadgets:
        reds = g.red_segments()
        for p in _sample_points(g, rng, per):
            if g.region_index(p) is not None:
                continue
            rep.samples_checked += 1
            if not any(_blocked(p, a, reds) for a in g.anchors.values()):
                bad.append(f"gadget {g.index}: point {p} outside all regions sees every anchor")
    rep.record("outside_points_blocked", bad)

    if inst.blocking or inst.source == "mcc":
        eps = inst.meta.get("epsilon")
        gamma = inst.instance.predrawn.gamma
        mids = {x: inst.gadgets[i].middle[j] for x, (i, j) in inst.middle_ids.items()}
        chords = [(gamma[u], gamma[v]) for es in inst.blocking.values() for u, v in es]
        bad = []
        for x, y in combinations(sorted(mids), 2):
            if inst.middle_ids[x][0] == inst.middle_ids[y][0]:
                continue
            key = (x, y)
            if key in inst.blocking:
                for u, v in inst.blocking[key]:
                    if not blocks_corridor(gamma[u], gamma[v], mids[x], mids[y], eps):
                        bad.append(f"blocking edge {u}-{v} does not cut the corridor {x}-{y}")
            elif any(segment_segment_dist2(p, q, mids[x], mids[y]) <= eps * eps for p, q in chords):
                bad.append(f"corridor of edge {x}-{y} contains a blocking edge")
        rep.record("corridors", bad)
    return rep
