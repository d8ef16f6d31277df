"""Exact-coordinate generators for propellers, small complete graphs and the
extremal union families."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .drawing import Drawing, Edge, Vertex
from .geometry import Point

RADIUS = 1000
BAND = 100
GAP = 100
ARC_STEP_DEG = 15.0


class ConstructionError(AssertionError):
    """A generated drawing failed its own post-check (a bug, not bad input)."""


def _polar(r: float, theta: float) -> Point:
    return Point(Fraction(round(r * math.cos(theta))), Fraction(round(r * math.sin(theta))))


def propeller(m: int, check: bool = True) -> Drawing:
    """m-propeller: hub 0 with leaves 1..m; blade i crosses blades i-1 and i+1.

    Blade i leaves the hub, crosses blade i-1 near angle theta_{i-1}, runs
    along the outer rim (its middle segment) and crosses blade i+1 near
    theta_i before its tail turns inward to the leaf.  The rim pieces are the
    only arcs on the unbounded cell.  For m = 2 the two blades cross twice.
    """
    if m < 2:
        raise ValueError("a propeller needs at least 2 blades")
    spacing = 2 * math.pi / m
    delta = spacing / 6
    R, rho = RADIUS, BAND
    hub = Point(Fraction(0), Fraction(0))
    vertices = [Vertex(0, hub)]
    edges = []
    for i in range(m):
        th_prev, th = spacing * (i - 1), spacing * i
        leaf = _polar(R - 2 * rho, th + 2 * delta)
        rim_lo, rim_hi = th_prev + delta, th - delta
        n_steps = max(1, math.ceil(math.degrees(rim_hi - rim_lo) / ARC_STEP_DEG))
        rim = [_polar(R + rho, rim_lo + (rim_hi - rim_lo) * s / n_steps) for s in range(n_steps + 1)]
        pts = [
            hub,
            _polar(R - rho, th_prev - delta),
            *rim,
            _polar(R - rho, th + delta),
            leaf,
        ]
        vertices.append(Vertex(i + 1, leaf))
        edges.append(Edge(i, 0, i + 1, tuple(pts)))
    d = Drawing(tuple(vertices), tuple(edges))
    if check:
        _check_propeller(d, m)
    return d


def _check_propeller(d: Drawing, m: int) -> None:
    from .arrangement import build
    from .structure import find_special

    arr = build(d)
    if any(c != 2 for c in arr.cr.values()):
        raise ConstructionError(f"propeller({m}) crossing counts {arr.cr}")
    expected = {frozenset((i, (i + 1) % m)) for i in range(m)}
    if m == 2:
        if arr.pair_crossings != {frozenset((0, 1)): 2}:
            raise ConstructionError("propeller(2) blades must cross twice")
        if set(arr.vertex_faces[1]) & set(arr.vertex_faces[2]):
            raise ConstructionError("propeller(2) leaves share a cell")
    elif set(arr.pair_crossings) != expected or any(c != 1 for c in arr.pair_crossings.values()):
        raise ConstructionError(f"propeller({m}) crossing pattern {arr.pair_crossings}")
    if 0 not in find_special(arr).special_cells:
        raise ConstructionError(f"propeller({m}) unbounded cell is not special")


def complete_drawing(n: int) -> Drawing:
    """Straight-line K_n for n <= 3."""
    if not 1 <= n <= 3:
        raise ValueError("complete_drawing supports 1 <= n <= 3")
    coords = [(0, 0), (4, 0), (0, 4)][:n]
    vertices = tuple(Vertex(i, Point(Fraction(x), Fraction(y))) for i, (x, y) in enumerate(coords))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            edges.append(Edge(len(edges), u, v, (vertices[u].location, vertices[v].location)))
    return Drawing(vertices, tuple(edges))


def isolated_vertex() -> Drawing:
    return complete_drawing(1)


def _bbox(d: Drawing):
    pts = [v.location for v in d.vertices] + [p for e in d.edges for p in e.points]
    return min(p.x for p in pts), max(p.x for p in pts), min(p.y for p in pts)


def disjoint_union(parts: Sequence[Drawing]) -> Drawing:
    """Place the parts side by side along the x-axis with renumbered ids."""
    vertices: list[Vertex] = []
    edges: list[Edge] = []
    offset = Fraction(0)
    for part in parts:
        if not part.vertices:
            continue
        xmin, xmax, ymin = _bbox(part)
        dx, dy = offset - xmin, -ymin
        remap = {}
        for v in part.vertices:
            remap[v.id] = len(vertices)
            vertices.append(Vertex(len(vertices), Point(v.location.x + dx, v.location.y + dy)))
        for e in part.edges:
            pts = tuple(Point(p.x + dx, p.y + dy) for p in e.points)
            edges.append(Edge(len(edges), remap[e.tail], remap[e.head], pts))
        offset += (xmax - xmin) + GAP
    return Drawing(tuple(vertices), tuple(edges))


def f_bound(n: int) -> int:
    """3 if n == 3, else floor(3n/4)."""
    return 3 if n == 3 else (3 * n) // 4


def two_thirds(n: int) -> int:
    return (2 * n) // 3


def family_2simple_parts(n: int) -> list[str]:
    """Composition of the 2-simple family as a list of part names."""
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 3:
        return [f"K{n}"]
    q, r = divmod(n, 4)
    if r == 0:
        return ["P3"] * q
    if r == 1:
        return ["P3"] * q + ["K1"]
    if r == 2:
        return ["P3"] * q + ["K2"]
    return ["P3"] * (q - 1) + ["P4", "K2"]


def family_3simple_parts(n: int) -> list[str]:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 3:
        return ["K3"]
    q, r = divmod(n, 3)
    return ["P2"] * q + ([] if r == 0 else ["K1"] if r == 1 else ["K2"])


_PART_CACHE: dict[str, Drawing] = {}


def _part(name: str) -> Drawing:
    if name not in _PART_CACHE:
        kind, size = name[0], int(name[1:])
        _PART_CACHE[name] = complete_drawing(size) if kind == "K" else propeller(size)
    return _PART_CACHE[name]


def family_2simple(n: int) -> Drawing:
    """Saturated 2-plane 2-simple drawing on n vertices with f_bound(n) edges."""
    return disjoint_union([_part(p) for p in family_2simple_parts(n)])


def family_3simple(n: int) -> Drawing:
    """Saturated 2-plane 3-simple drawing on n vertices; floor(2n/3) edges for n != 3."""
    return disjoint_union([_part(p) for p in family_3simple_parts(n)])
