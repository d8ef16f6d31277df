"""Turn corridors into concrete polyline edges and saturate drawings greedily.

Each face leg of a corridor is routed through the vertical-slab trapezoids
of that face: straight moves inside a convex trapezoid, hops between
neighbouring trapezoids through free points on their shared wall.  An arc is
crossed by a short segment that pierces it in the interior of a slab, so the
crossing lands away from every node.  The polyline is then shortened where a
direct segment touches nothing, and the result is always re-checked by
rebuilding the arrangement.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import Arrangement, build
from .drawing import Drawing, DrawingError
from .geometry import Point, Segment, boxes_overlap, intersect_segments, on_segment
from .geometry import Disjoint, SharedEndpoint
from .saturation import Corridor, addable, is_saturated, non_adjacent_pairs
from .structure import check_k_plane, check_l_simple
from .trapezoids import _finite, pick_in


class RealizationFailed(RuntimeError):
    def __init__(self, corridor: Corridor, reason: str):
        super().__init__(f"could not realize corridor {corridor.to_dict()}: {reason}")
        self.corridor = corridor
        self.reason = reason


@dataclass(frozen=True)
class RoutingPolicy:
    """Knobs for realization and greedy saturation.

    ``order`` is ``"lexicographic"`` (pairs by vertex id) or ``"shuffled"``
    (a seeded permutation).  ``shrink`` scales the probe step used when a
    crossing segment has to be pulled off a vertical wall.
    """

    preference: str = "fewest-crossings"
    shrink: Fraction = Fraction(1, 2)
    max_retries: int = 6
    order: str = "lexicographic"

    def __post_init__(self):
        if not (0 < self.shrink < 1):
            raise ValueError("shrink must lie strictly between 0 and 1")
        if self.max_retries < 1:
            raise ValueError("max_retries must be positive")
        if self.order not in ("lexicographic", "shuffled"):
            raise ValueError(f"unknown pair order {self.order!r}")


DEFAULT_POLICY = RoutingPolicy()


# -- crossing segments ------------------------------------------------------------------


def _inside(tm, tid: int, p: Point) -> bool:
    t = tm.traps[tid]
    xl, xr = tm.slab_bounds(t.slab)
    if not (xl < p.x < xr):
        return False
    lo, hi = tm.wall(t, p.x)
    return (lo is None or lo < p.y) and (hi is None or p.y < hi)


def _pull_off(tm, tid: int, x: Fraction, y: Fraction, toward: int, shrink: Fraction) -> Point:
    """A point (x', y) strictly inside trapezoid tid, approaching x from one side."""
    xl, xr = tm.slab_bounds(tm.traps[tid].slab)
    step = (x - xl) if toward < 0 else (xr - x)
    for _ in range(200):
        step *= shrink
        p = Point(x + toward * step, y)
        if _inside(tm, tid, p):
            return p
    raise ArithmeticError("could not step off a vertical wall")


def _crossing(tm, site, lane, lanes, slab_choice, shrink):
    """Two points on either side of an arc piece and the trapezoid of each."""
    c, t_a, t_b = tm.crossing_on(site, lane, lanes, slab_choice)
    if t_a is None or t_b is None:
        raise ArithmeticError("crossing site lacks a neighbouring trapezoid")
    if site[0] == "s":
        ta, tb = tm.traps[t_a], tm.traps[t_b]
        lo, _ = _finite(tm.wall(ta, c.x)[0], c.y)
        _, hi = _finite(c.y, tm.wall(tb, c.x)[1])
        return (Point(c.x, pick_in(lo, c.y)), t_a), (Point(c.x, pick_in(c.y, hi)), t_b)
    return (
        (_pull_off(tm, t_a, c.x, c.y, -1, shrink), t_a),
        (_pull_off(tm, t_b, c.x, c.y, +1, shrink), t_b),
    )


# -- legs -------------------------------------------------------------------------------


def _vertex_traps(tm, arr: Arrangement, v: int, f: int) -> list[int]:
    return [t for t in tm.traps_touching(arr.drawing.location(v)) if tm.traps[t].face == f]


def _leg_tokens(tm, arr, f, start, goal):
    """Waypoint tokens for one face leg.

    ``start``/``goal`` are ("v", vertex) or ("q", point, trap).
    """
    s_traps = _vertex_traps(tm, arr, start[1], f) if start[0] == "v" else [start[2]]
    g_traps = _vertex_traps(tm, arr, goal[1], f) if goal[0] == "v" else [goal[2]]
    if not s_traps or not g_traps:
        raise ArithmeticError(f"anchor not on face {f}")
    path = tm.path(s_traps, set(g_traps))
    if path is None:
        raise ArithmeticError(f"no trapezoid path inside face {f}")
    tokens = []
    for i, (t, portal) in enumerate(path):
        if portal is not None:
            tokens.append(("portal", portal[0], portal[1]))
        last = i == len(path) - 1
        first = i == 0
        if (first and start[0] == "q") and not (last and goal[0] == "v"):
            continue
        if last and goal[0] == "q" and not (first and start[0] == "v"):
            continue
        tokens.append(("ip", t))
    return tokens


def _resolve(tm, tokens_per_leg, rng_order):
    """Turn tokens into points, spreading repeated uses over lanes."""
    totals = Counter()
    for toks in tokens_per_leg:
        for tok in toks:
            totals[_key(tok)] += 1
    seen = Counter()
    out = []
    for toks in tokens_per_leg:
        pts = []
        for tok in toks:
            key = _key(tok)
            i = seen[key]
            seen[key] += 1
            lanes = totals[key]
            lane = rng_order(i, lanes)
            if tok[0] == "ip":
                pts.append(tm.interior_point(tm.traps[tok[1]], lane, lanes))
            else:
                _, x, (lo, hi) = tok
                pts.append(Point(x, pick_in(lo, hi, lane, lanes)))
        out.append(pts)
    return out


def _key(tok):
    return (tok[0], tok[1]) if tok[0] == "ip" else (tok[0], tok[1], tok[2])


# -- shortcutting -------------------------------------------------------------------------


class _Obstacles:
    def __init__(self, arr: Arrangement):
        self.segments = [Segment(p, q) for a in arr.arcs for p, q in zip(a.points, a.points[1:])]
        self.points = [n.location for n in arr.nodes]

    def clear(self, s: Segment, allowed: set[Point]) -> bool:
        """True if s meets the skeleton at most in allowed vertex locations."""
        for p in self.points:
            if p not in allowed and on_segment(p, s):
                return False
        for t in self.segments:
            if not boxes_overlap(s, t):
                continue
            kind = intersect_segments(s, t)
            if isinstance(kind, Disjoint):
                continue
            if isinstance(kind, SharedEndpoint) and kind.point in allowed:
                continue
            return False
        return True


def _shortcut(obst: _Obstacles, pts: list[Point], allowed: set[Point]) -> list[Point]:
    out = [pts[0]]
    i = 0
    while i < len(pts) - 1:
        j = len(pts) - 1
        while j > i + 1 and not obst.clear(Segment(pts[i], pts[j]), allowed):
            j -= 1
        out.append(pts[j])
        i = j
    return out


def _self_crossing(pts: list[Point]) -> bool:
    segs = [Segment(p, q) for p, q in zip(pts, pts[1:])]
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            kind = intersect_segments(segs[i], segs[j])
            if isinstance(kind, Disjoint):
                continue
            if j == i + 1 and isinstance(kind, SharedEndpoint) and kind.point == segs[i].b:
                continue
            return True
    return False


# -- realization ------------------------------------------------------------------------------


def _candidate(arr: Arrangement, corridor: Corridor, attempt: int, policy: RoutingPolicy, shortcut: bool):
    tm = arr.trapezoids
    site_uses = Counter()
    site_choice = []
    for f, a in corridor.steps:
        sites = tm.crossing_sites(a)
        if not sites:
            raise ArithmeticError(f"arc {a} has no crossing site")
        idx = (len(sites) // 2 + attempt) % len(sites)
        site_choice.append((a, idx))
        site_uses[(a, idx)] += 1

    order = (lambda i, n: i) if attempt % 2 == 0 else (lambda i, n: n - 1 - i)
    seen = Counter()
    anchors = [("v", corridor.start)]
    crossing_pairs = []
    for step, (f, a) in enumerate(corridor.steps):
        key = site_choice[step]
        site = tm.crossing_sites(a)[key[1]]
        lanes = site_uses[key]
        lane = order(seen[key], lanes)
        seen[key] += 1
        (p1, t1), (p2, t2) = _crossing(tm, site, lane, lanes, attempt // 2, policy.shrink)
        nxt = corridor.faces[step + 1]
        if tm.traps[t1].face != f:
            (p1, t1), (p2, t2) = (p2, t2), (p1, t1)
        if tm.traps[t1].face != f or tm.traps[t2].face != nxt:
            raise ArithmeticError(f"arc {a} does not separate faces {f} and {nxt}")
        anchors.append(("q", p1, t1))
        anchors.append(("q", p2, t2))
        crossing_pairs.append((p1, p2))
    anchors.append(("v", corridor.end))

    legs = []
    for i, f in enumerate(corridor.faces):
        legs.append(_leg_tokens(tm, arr, f, anchors[2 * i], anchors[2 * i + 1]))
    leg_pts = _resolve(tm, legs, order)

    d = arr.drawing
    u_loc, v_loc = d.location(corridor.start), d.location(corridor.end)
    obst = _Obstacles(arr) if shortcut else None
    pts: list[Point] = []
    for i, inner in enumerate(leg_pts):
        a = u_loc if i == 0 else crossing_pairs[i - 1][1]
        b = v_loc if i == len(leg_pts) - 1 else crossing_pairs[i][0]
        leg = [a, *inner, b]
        if obst is not None:
            leg = _shortcut(obst, leg, {u_loc, v_loc})
        pts.extend(leg)
    # legs share no endpoints: each leg ends on one side of a crossing segment
    # and the next begins on the other side
    return _dedupe(pts)


def _dedupe(pts: list[Point]) -> list[Point]:
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def verify_realization(arr: Arrangement, corridor: Corridor, points, k: int, l: int) -> tuple[Drawing, Arrangement]:
    """Rebuild with the new edge and confirm it crosses exactly the corridor's edges."""
    d = arr.drawing
    d2, eid = d.with_edge(corridor.start, corridor.end, points)
    arr2 = build(d2)  # raises DrawingError on touches, triple points, self-crossings
    got = Counter({e: arr2.crossings_between(eid, e) for e in d.edge_map if arr2.crossings_between(eid, e)})
    want = Counter(corridor.crossed_edges(arr))
    if got != want:
        raise ArithmeticError(f"crossed {dict(got)} instead of {dict(want)}")
    if not check_k_plane(arr2, k).ok or not check_l_simple(arr2, l).ok:
        raise ArithmeticError("realized edge breaks the crossing constraints")
    return d2, arr2


def realize(
    d: Drawing,
    corridor: Corridor,
    arr: Optional[Arrangement] = None,
    k: int = 2,
    l: int = 1,
    policy: RoutingPolicy = DEFAULT_POLICY,
) -> tuple[Point, ...]:
    """Polyline for the corridor's new edge, verified by rebuilding."""
    return realize_into(d, corridor, arr, k, l, policy)[0]


def realize_into(d, corridor, arr=None, k=2, l=1, policy=DEFAULT_POLICY):
    """Like :func:`realize` but also return the extended drawing and arrangement."""
    arr = arr if arr is not None else build(d)
    reasons = []
    for attempt in range(policy.max_retries):
        for shortcut in (True, False):
            try:
                pts = _candidate(arr, corridor, attempt, policy, shortcut)
                if _self_crossing(pts):
                    raise ArithmeticError("polyline crosses itself")
                d2, arr2 = verify_realization(arr, corridor, pts, k, l)
                return tuple(pts), d2, arr2
            except (ArithmeticError, DrawingError) as exc:
                reasons.append(str(exc))
    raise RealizationFailed(corridor, "; ".join(dict.fromkeys(reasons)))


# -- greedy saturation ------------------------------------------------------------------------------


@dataclass
class TraceEntry:
    pair: tuple[int, int]
    corridor: Corridor
    edge: int
    crossed_edges: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "corridor": self.corridor.to_dict(),
            "edge": self.edge,
            "crossed_edges": list(self.crossed_edges),
        }


@dataclass
class GreedyResult:
    drawing: Drawing
    trace: list[TraceEntry] = field(default_factory=list)
    arrangement: Optional[Arrangement] = None


def greedy_saturate(
    d: Drawing, k: int, l: int, policy: RoutingPolicy = DEFAULT_POLICY, seed: int = 0
) -> GreedyResult:
    """Insert edges along the first available corridor until none is left."""
    arr = build(d)
    if not check_k_plane(arr, k).ok or not check_l_simple(arr, l).ok:
        raise ValueError(f"input must be {k}-plane and {l}-simple")
    pairs = non_adjacent_pairs(d)
    if policy.order == "shuffled":
        random.Random(seed).shuffle(pairs)
    trace = []
    while True:
        for u, v in pairs:
            if d.is_adjacent(u, v):
                continue
            c = addable(d, arr, u, v, k, l)
            if c is not None:
                break
        else:
            break
        _, d2, arr2 = realize_into(d, c, arr, k, l, policy)
        trace.append(TraceEntry((u, v), c, d2.edges[-1].id, c.crossed_edges(arr)))
        d, arr = d2, arr2
    return GreedyResult(d, trace, arr)


def saturate_and_check(d: Drawing, k: int, l: int, policy: RoutingPolicy = DEFAULT_POLICY, seed: int = 0):
    res = greedy_saturate(d, k, l, policy, seed)
    rep = is_saturated(res.drawing, k, l, res.arrangement)
    return res, rep
