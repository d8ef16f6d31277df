"""Shared builders and independent oracles for the test-suite."""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

from kplane.drawing import Drawing, Edge, Vertex, validate
from kplane.geometry import Point


def P(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def triangle() -> Drawing:
    vs = (Vertex(0, P(0, 0)), Vertex(1, P(4, 0)), Vertex(2, P(0, 4)))
    es = (
        Edge(0, 0, 1, (P(0, 0), P(4, 0))),
        Edge(1, 1, 2, (P(4, 0), P(0, 4))),
        Edge(2, 0, 2, (P(0, 0), P(0, 4))),
    )
    return Drawing(vs, es)


def x_drawing() -> Drawing:
    vs = (Vertex(0, P(0, 0)), Vertex(1, P(4, 4)), Vertex(2, P(0, 4)), Vertex(3, P(4, 0)))
    es = (Edge(0, 0, 1, (P(0, 0), P(4, 4))), Edge(1, 2, 3, (P(0, 4), P(4, 0))))
    return Drawing(vs, es)


def random_drawing(rng: random.Random, n: int, m: int, grid: int = 60, bend_prob: float = 0.4, tries: int = 200):
    """A valid drawing with n vertices and up to m edges (straight or one bend)."""
    for _ in range(tries):
        pts = set()
        while len(pts) < n:
            pts.add((rng.randrange(grid), rng.randrange(grid)))
        pts = sorted(pts)
        vs = tuple(Vertex(i, P(*p)) for i, p in enumerate(pts))
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        rng.shuffle(pairs)
        edges: list[Edge] = []
        d = Drawing(vs, ())
        for a, b in pairs:
            if len(edges) >= m:
                break
            poly = [vs[a].location]
            if rng.random() < bend_prob:
                poly.append(P(rng.randrange(grid) + Fraction(1, 2), rng.randrange(grid) + Fraction(1, 3)))
            poly.append(vs[b].location)
            cand = Drawing(vs, tuple(edges) + (Edge(len(edges), a, b, tuple(poly)),))
            if validate(cand).ok:
                edges.append(cand.edges[-1])
                d = cand
        return d
    raise RuntimeError("could not build a valid random drawing")


def _orient(p, q, r):
    v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (v > 0) - (v < 0)


def brute_crossings(d: Drawing) -> Counter:
    """Per-edge proper-crossing counts from a plain double loop over segments."""
    out = Counter({e.id: 0 for e in d.edges})
    segs = [(e.id, p, q) for e in d.edges for p, q in zip(e.points, e.points[1:])]
    for i in range(len(segs)):
        ei, a, b = segs[i]
        for j in range(i + 1, len(segs)):
            ej, c, dd = segs[j]
            if ei == ej:
                continue
            if _orient(a, b, c) * _orient(a, b, dd) < 0 and _orient(c, dd, a) * _orient(c, dd, b) < 0:
                out[ei] += 1
                out[ej] += 1
    return out


def brute_pair_crossings(d: Drawing, e: int, f: int) -> int:
    em = d.edge_map
    n = 0
    for a, b in zip(em[e].points, em[e].points[1:]):
        for c, dd in zip(em[f].points, em[f].points[1:]):
            if _orient(a, b, c) * _orient(a, b, dd) < 0 and _orient(c, dd, a) * _orient(c, dd, b) < 0:
                n += 1
    return n


def skeleton_components(d: Drawing) -> int:
    """Connected pieces of the drawn skeleton: union-find over edges and crossing edge pairs."""
    parent = {v.id: v.id for v in d.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.edges:
        parent[find(e.tail)] = find(e.head)
    for e in d.edges:
        for f in d.edges:
            if e.id < f.id and brute_pair_crossings(d, e.id, f.id):
                parent[find(e.tail)] = find(f.tail)
    return len({find(v.id) for v in d.vertices})
