"""Structural predicates on drawings: k-plane, l-simple, flags, special cells,
essential components, and executable checks of the structural claims used by
the saturation lower bounds."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from .arrangement import UNBOUNDED, Arrangement, build
from .drawing import Drawing


class NotTwoPlane(ValueError):
    """Middle segments are only defined when every edge has at most 2 crossings."""


@dataclass
class Check:
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self) -> bool:  # pragma: no cover - convenience only
        return self.ok


def check_k_plane(arr: Arrangement, k: int) -> Check:
    if k < 0:
        raise ValueError("k must be non-negative")
    for e, c in sorted(arr.cr.items()):
        if c > k:
            return Check(False, (e,), f"edge {e} has {c} crossings")
    return Check(True)


def check_l_simple(arr: Arrangement, l: int) -> Check:
    if l < 1:
        raise ValueError("l must be at least 1")
    d = arr.drawing
    # only pairs that cross or share an endpoint can exceed l >= 1
    pairs = set(arr.pair_crossings)
    for v in d.vertices:
        inc = d.incidence[v.id]
        for i in range(len(inc)):
            for j in range(i + 1, len(inc)):
                pairs.add(frozenset((inc[i], inc[j])))
    for pair in sorted(pairs, key=sorted):
        e, f = sorted(pair)
        c = arr.common_points(e, f)
        if c > l:
            return Check(False, (e, f), f"edges {e} and {f} share {c} points")
    return Check(True)


# -- flags ------------------------------------------------------------------------


@dataclass
class Flags:
    flags: list[tuple[int, int]]
    empty: list[tuple[int, int]]


def find_flags(d: Drawing, arr: Arrangement) -> Flags:
    """(leaf, edge) pairs; a flag is empty when its edge has no crossing."""
    flags = []
    for v in d.vertices:
        if d.degree(v.id) == 1:
            flags.append((v.id, d.incidence[v.id][0]))
    empty = [(u, e) for u, e in flags if arr.cr[e] == 0]
    return Flags(flags, empty)


# -- special cells ---------------------------------------------------------------------


@dataclass
class Special:
    middle_segments: list[int]
    special_cells: list[int]
    special_edges: list[int]


def middle_segments(arr: Arrangement) -> list[int]:
    return [a.id for a in arr.arcs if arr.cr[a.edge] == 2 and a.index == 1]


def find_special(arr: Arrangement) -> Special:
    """Middle segments, special cells and special edges of a 2-plane drawing.

    A cell is special when all of its boundary arcs are middle segments; this
    is cross-checked against having no (non-isolated) vertex on the boundary.
    """
    if any(c > 2 for c in arr.cr.values()):
        raise NotTwoPlane("special cells need a 2-plane drawing")
    middles = set(middle_segments(arr))
    cells = []
    edges: set[int] = set()
    for f in arr.faces:
        by_arcs = all(a in middles for a in f.arcs)
        by_vertices = not f.vertices
        if by_arcs != by_vertices:
            raise AssertionError(f"special-cell characterizations disagree on face {f.id}")
        if by_arcs:
            cells.append(f.id)
            edges.update(arr.arcs[a].edge for a in f.arcs)
    return Special(sorted(middles), cells, sorted(edges))


def special_cell_of_edge(arr: Arrangement, special: Special, e: int) -> list[int]:
    """Special cells bounded by the middle segment of edge e."""
    arcs = arr.edge_arcs[e]
    if len(arcs) != 3:
        return []
    cells = set(special.special_cells)
    return sorted({f for f in arr.arc_faces(arcs[1]) if f in cells})


def check_claim1(arr: Arrangement) -> Check:
    """A special edge bounds at most one special cell."""
    special = find_special(arr)
    for e in special.special_edges:
        cells = special_cell_of_edge(arr, special, e)
        if len(cells) > 1:
            return Check(False, (e, *cells), f"edge {e} bounds special cells {cells}")
    return Check(True)


def check_claim2(d: Drawing, arr: Arrangement) -> Check:
    """Every flag is empty."""
    flags = find_flags(d, arr)
    empty = set(flags.empty)
    for fl in flags.flags:
        if fl not in empty:
            return Check(False, fl, f"flag {fl} has {arr.cr[fl[1]]} crossings")
    return Check(True)


def two_propeller_edges(arr: Arrangement) -> list[tuple[int, int, int]]:
    """(hub, edge, edge) for adjacent edge pairs crossing each other exactly twice
    and nothing else."""
    d = arr.drawing
    out = []
    for pair, c in sorted(arr.pair_crossings.items(), key=lambda kv: sorted(kv[0])):
        if c != 2:
            continue
        e, f = sorted(pair)
        if arr.cr[e] != 2 or arr.cr[f] != 2:
            continue
        ee, ff = d.edge_map[e], d.edge_map[f]
        shared = {ee.tail, ee.head} & {ff.tail, ff.head}
        if len(shared) == 1:
            out.append((shared.pop(), e, f))
    return out


def check_claim3(d: Drawing, arr: Arrangement) -> Check:
    """Every flag (u, uv) has deg(v) >= 3 or uv lies in a 2-propeller at v."""
    props = two_propeller_edges(arr)
    for u, e in find_flags(d, arr).flags:
        v = d.edge_map[e].other(u)
        if d.degree(v) >= 3:
            continue
        if any(hub == v and e in (a, b) for hub, a, b in props):
            continue
        return Check(False, (u, e), f"leaf {u}: neighbour {v} has degree {d.degree(v)}")
    return Check(True)


# -- essential components ---------------------------------------------------------------


@dataclass
class EssentialComponents:
    components: list[list[int]]
    order: list[tuple[int, int]]  # (i, j): component i lies in a bounded cell of component j
    entangled: list[tuple[int, int]] = field(default_factory=list)


def graph_components(d: Drawing) -> list[list[int]]:
    parent = {v.id: v.id for v in d.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.edges:
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in d.vertices:
        groups.setdefault(find(v.id), []).append(v.id)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def subdrawing(d: Drawing, vertex_ids) -> Drawing:
    keep = set(vertex_ids)
    return Drawing(
        tuple(v for v in d.vertices if v.id in keep),
        tuple(e for e in d.edges if e.tail in keep and e.head in keep),
    )


def essential_components(d: Drawing, arr: Arrangement) -> EssentialComponents:
    comps = [c for c in graph_components(d) if len(c) >= 2]
    comp_edges = [{e for v in c for e in d.incidence[v]} for c in comps]
    subs = [build(subdrawing(d, c)) for c in comps]
    order, entangled = [], []
    for i, ci in enumerate(comps):
        for j in range(len(comps)):
            if i == j:
                continue
            crossing = any(arr.crossings_between(e, f) for e in comp_edges[i] for f in comp_edges[j])
            if crossing:
                if i < j:
                    entangled.append((i, j))
                continue
            faces = {subs[j].locate(d.location(v)).id for v in ci}
            if len(faces) == 1 and UNBOUNDED not in faces:
                order.append((i, j))
    return EssentialComponents(comps, order, entangled)


def check_claim4(d: Drawing, arr: Arrangement) -> Check:
    """For each minimal essential component G1 and G2 = the other essential
    components, the cell between them is special in G1 or in G2."""
    ess = essential_components(d, arr)
    if len(ess.components) < 2:
        return Check(True, detail="essentially connected")
    has_inside = {j for _, j in ess.order}
    for i, comp in enumerate(ess.components):
        if i in has_inside:
            continue
        if any(i in pair for pair in ess.entangled):
            continue
        others = [v for j, c in enumerate(ess.components) if j != i for v in c]
        a1, a2 = build(subdrawing(d, comp)), build(subdrawing(d, others))
        c1_special = not a1.faces[UNBOUNDED].vertices
        c2 = a2.locate(d.location(comp[0]))
        c2_special = not c2.vertices
        if not (c1_special or c2_special):
            return Check(False, (i,), f"component {i} and the rest meet in a non-special cell")
    return Check(True)


# -- report -----------------------------------------------------------------------------------


@dataclass
class StructureReport:
    k: int
    l: int
    is_k_plane: bool
    k_plane_witness: Optional[tuple]
    is_l_simple: bool
    l_simple_witness: Optional[tuple]
    flags: list[tuple[int, int]]
    empty_flags: list[tuple[int, int]]
    middle_segments: Optional[list[int]]
    special_cells: Optional[list[int]]
    special_edges: Optional[list[int]]
    essential_components: list[list[int]]
    containment: list[tuple[int, int]]
    crossings_per_edge: dict[int, int]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["crossings_per_edge"] = {str(e): c for e, c in sorted(self.crossings_per_edge.items())}
        out["special_applicable"] = self.special_cells is not None
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def analyze(d: Drawing, k: int = 2, l: int = 1, arr: Optional[Arrangement] = None) -> StructureReport:
    arr = arr if arr is not None else build(d)
    kp = check_k_plane(arr, k)
    ls = check_l_simple(arr, l)
    flags = find_flags(d, arr)
    try:
        sp = find_special(arr)
        mids, cells, sedges = sp.middle_segments, sp.special_cells, sp.special_edges
    except NotTwoPlane:
        mids = cells = sedges = None
    ess = essential_components(d, arr)
    return StructureReport(
        k=k,
        l=l,
        is_k_plane=kp.ok,
        k_plane_witness=kp.witness,
        is_l_simple=ls.ok,
        l_simple_witness=ls.witness,
        flags=flags.flags,
        empty_flags=flags.empty,
        middle_segments=mids,
        special_cells=cells,
        special_edges=sedges,
        essential_components=ess.components,
        containment=ess.order,
        crossings_per_edge=arr.crossings_per_edge(),
    )
