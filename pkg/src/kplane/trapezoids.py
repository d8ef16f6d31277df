"""Vertical-slab trapezoid decomposition of an arrangement.

Each open slab between consecutive feature x-coordinates is cut by the
segments spanning it into convex trapezoids; each trapezoid lies in exactly
one face.  Trapezoids of neighbouring slabs are linked through "portals",
free stretches of the shared vertical wall.  Straight moves between a
trapezoid's interior point and points on its closure never leave the face,
which is what the edge router relies on.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .geometry import Point, simplest_between

INF = None


@dataclass(frozen=True)
class SlabSegment:
    left: Point
    right: Point
    arc: int
    lr_half: int  # half-edge running left to right along this segment

    def y_at(self, x: Fraction) -> Fraction:
        l, r = self.left, self.right
        return l.y + (x - l.x) * (r.y - l.y) / (r.x - l.x)


@dataclass(frozen=True)
class Trapezoid:
    id: int
    slab: int
    lower: Optional[SlabSegment]
    upper: Optional[SlabSegment]
    face: int


def _finite(lo, hi, pad=1):
    if lo is None and hi is None:
        return Fraction(-pad), Fraction(pad)
    if lo is None:
        return hi - pad, hi
    if hi is None:
        return lo, lo + pad
    return lo, hi


def pick_in(lo: Fraction, hi: Fraction, lane: int = 0, lanes: int = 1) -> Fraction:
    """Simple rational inside the lane-th of `lanes` equal parts of (lo, hi)."""
    width = hi - lo
    return simplest_between(lo + width * lane / lanes, lo + width * (lane + 1) / lanes)


class TrapezoidMap:
    def __init__(self, arr):
        self.arr = arr
        feats: set[Point] = {n.location for n in arr.nodes}
        for a in arr.arcs:
            feats.update(a.points)
        self.xs: list[Fraction] = sorted({p.x for p in feats})
        self.x_index = {x: i for i, x in enumerate(self.xs)}
        self.point_ys: dict[Fraction, list[Fraction]] = defaultdict(list)
        for p in feats:
            self.point_ys[p.x].append(p.y)
        self.verticals: dict[Fraction, list[tuple[Fraction, Fraction, int]]] = defaultdict(list)

        slab_segs: list[list[SlabSegment]] = [[] for _ in range(len(self.xs) + 1)]
        self.arc_segments: dict[int, list] = defaultdict(list)
        for a in arr.arcs:
            for p, q in zip(a.points, a.points[1:]):
                if p.x == q.x:
                    rec = (min(p.y, q.y), max(p.y, q.y), a.id)
                    self.verticals[p.x].append(rec)
                    self.arc_segments[a.id].append(("v", p.x, rec))
                    continue
                if p.x < q.x:
                    s = SlabSegment(p, q, a.id, 2 * a.id)
                else:
                    s = SlabSegment(q, p, a.id, 2 * a.id + 1)
                self.arc_segments[a.id].append(("s", s))
                for j in range(self.x_index[s.left.x] + 1, self.x_index[s.right.x] + 1):
                    slab_segs[j].append(s)

        self.traps: list[Trapezoid] = []
        self.slab_traps: list[list[int]] = []
        self.seg_pos: dict[tuple[int, SlabSegment], int] = {}
        for j, segs in enumerate(slab_segs):
            xl, xr = self.slab_bounds(j)
            mid = (xl + xr) / 2
            segs.sort(key=lambda s: s.y_at(mid))
            ids = []
            bounds = [None, *segs, None]
            for k in range(len(segs) + 1):
                lower, upper = bounds[k], bounds[k + 1]
                face = arr.half_edge_face[lower.lr_half] if lower is not None else 0
                ids.append(len(self.traps))
                self.traps.append(Trapezoid(len(self.traps), j, lower, upper, face))
            for k, s in enumerate(segs):
                self.seg_pos[(j, s)] = k
            self.slab_traps.append(ids)
        self._build_adjacency()

    # -- geometry helpers ---------------------------------------------------

    def slab_bounds(self, j: int) -> tuple[Fraction, Fraction]:
        xs = self.xs
        if not xs:
            return Fraction(-1), Fraction(1)
        left = xs[j - 1] if j >= 1 else xs[0] - 1
        right = xs[j] if j < len(xs) else xs[-1] + 1
        return left, right

    def wall(self, t: Trapezoid, x: Fraction):
        lo = t.lower.y_at(x) if t.lower is not None else INF
        hi = t.upper.y_at(x) if t.upper is not None else INF
        return lo, hi

    def interior_point(self, t: Trapezoid, lane: int = 0, lanes: int = 1) -> Point:
        xl, xr = self.slab_bounds(t.slab)
        x = pick_in(xl, xr, lane, lanes)
        lo, hi = _finite(*self.wall(t, x))
        return Point(x, pick_in(lo, hi))

    def free_intervals(self, x: Fraction, lo, hi) -> list[tuple[Fraction, Fraction]]:
        """Open pieces of the wall interval (lo, hi) at x avoiding all features."""
        blockers = [(y, y) for y in self.point_ys.get(x, ())]
        blockers += [(a, b) for a, b, _ in self.verticals.get(x, ())]
        finite = [v for b in blockers for v in b]
        if lo is None:
            lo = min(finite + ([hi] if hi is not None else []), default=Fraction(0)) - 1
        if hi is None:
            hi = max(finite + [lo], default=Fraction(0)) + 1
        out = []
        cur = lo
        for a, b in sorted(blockers):
            if b <= cur:
                continue
            if a >= hi:
                break
            if a > cur:
                out.append((cur, a))
            cur = max(cur, b)
        if cur < hi:
            out.append((cur, hi))
        return out

    # -- adjacency ----------------------------------------------------------------

    def _build_adjacency(self) -> None:
        self.adj: dict[int, list[tuple[int, Fraction, tuple[Fraction, Fraction]]]] = defaultdict(list)
        for j, x in enumerate(self.xs):
            left, right = self.slab_traps[j], self.slab_traps[j + 1]
            i = k = 0
            while i < len(left) and k < len(right):
                tl, tr = self.traps[left[i]], self.traps[right[k]]
                lo1, hi1 = self.wall(tl, x)
                lo2, hi2 = self.wall(tr, x)
                lo = lo1 if lo2 is None else lo2 if lo1 is None else max(lo1, lo2)
                hi = hi1 if hi2 is None else hi2 if hi1 is None else min(hi1, hi2)
                if lo is None or hi is None or lo < hi:
                    free = self.free_intervals(x, lo, hi)
                    if free:
                        if tl.face != tr.face:
                            raise AssertionError(f"portal joins faces {tl.face} and {tr.face}")
                        self.adj[tl.id].append((tr.id, x, free[0]))
                        self.adj[tr.id].append((tl.id, x, free[0]))
                # advance the interval that ends lower
                if hi1 is None:
                    k += 1
                elif hi2 is None:
                    i += 1
                elif hi1 < hi2:
                    i += 1
                elif hi2 < hi1:
                    k += 1
                else:
                    i += 1
                    k += 1

    # -- anchors --------------------------------------------------------------------

    def traps_touching(self, p: Point) -> list[int]:
        """Trapezoids whose closure contains the feature point p."""
        j = self.x_index[p.x]
        out = []
        for slab in (j, j + 1):
            for tid in self.slab_traps[slab]:
                lo, hi = self.wall(self.traps[tid], p.x)
                if (lo is None or lo <= p.y) and (hi is None or p.y <= hi):
                    out.append(tid)
        return out

    def crossing_sites(self, arc: int):
        """Candidate places to cross `arc`: (kind, data) records in arc order."""
        return self.arc_segments[arc]

    def crossing_on(self, site, lane: int = 0, lanes: int = 1, slab_choice: int = 0):
        """Crossing point on a segment site and the trapezoids on its two sides."""
        if site[0] == "s":
            s: SlabSegment = site[1]
            j0, j1 = self.x_index[s.left.x] + 1, self.x_index[s.right.x]
            slabs = list(range(j0, j1 + 1))
            j = slabs[(len(slabs) // 2 + slab_choice) % len(slabs)]
            xl, xr = self.slab_bounds(j)
            x = pick_in(xl, xr, lane, lanes)
            c = Point(x, s.y_at(x))
            k = self.seg_pos[(j, s)]
            below, above = self.slab_traps[j][k], self.slab_traps[j][k + 1]
            return c, below, above
        _, x, (ylo, yhi, _arc) = site
        y = pick_in(ylo, yhi, lane, lanes)
        j = self.x_index[x]
        left = right = None
        for tid in self.slab_traps[j]:
            lo, hi = self.wall(self.traps[tid], x)
            if (lo is None or lo < y) and (hi is None or y < hi):
                left = tid
        for tid in self.slab_traps[j + 1]:
            lo, hi = self.wall(self.traps[tid], x)
            if (lo is None or lo < y) and (hi is None or y < hi):
                right = tid
        return Point(x, y), left, right

    # -- search -------------------------------------------------------------------

    def path(self, starts: list[int], goals: set[int]) -> Optional[list[tuple[int, Optional[tuple]]]]:
        """BFS through portals; returns [(trap, portal-into-trap), ...] or None."""
        prev: dict[int, Optional[tuple]] = {}
        queue = deque()
        for s in starts:
            if s not in prev:
                prev[s] = None
                queue.append(s)
        while queue:
            t = queue.popleft()
            if t in goals:
                out = []
                cur = t
                while cur is not None:
                    link = prev[cur]
                    out.append((cur, None if link is None else link[1:]))
                    cur = None if link is None else link[0]
                return out[::-1]
            for nb, x, interval in self.adj.get(t, ()):
                if nb not in prev:
                    prev[nb] = (t, x, interval)
                    queue.append(nb)
        return None

    def interior_point_of_face(self, f: int) -> Point:
        for t in self.traps:
            if t.face == f:
                return self.interior_point(t)
        raise AssertionError(f"face {f} has no trapezoid")
