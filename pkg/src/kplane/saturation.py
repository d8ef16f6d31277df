"""Saturation: can an edge be added while staying k-plane and l-simple?

A prospective edge is abstracted as a corridor, a walk through faces of the
arrangement that crosses arcs in their interiors.  Each existing edge ``e``
may be crossed at most ``min(k - cr(e), l - adj(e))`` times, where ``adj(e)``
is 1 when ``e`` shares an endpoint with the new edge, and the new edge itself
may cross at most ``k`` arcs.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .arrangement import Arrangement, build
from .drawing import Drawing
from .structure import check_k_plane, check_l_simple, find_special


@dataclass(frozen=True)
class Corridor:
    start: int
    steps: tuple[tuple[int, int], ...]  # (face, crossed arc)
    final_face: int
    end: int

    @property
    def faces(self) -> tuple[int, ...]:
        return tuple(f for f, _ in self.steps) + (self.final_face,)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.steps)

    @property
    def crossings(self) -> int:
        return len(self.steps)

    def crossed_edges(self, arr: Arrangement) -> tuple[int, ...]:
        return tuple(arr.arcs[a].edge for a in self.arcs)

    def to_dict(self, arr: Optional[Arrangement] = None) -> dict:
        out = {"start": self.start, "end": self.end, "faces": list(self.faces), "arcs": list(self.arcs)}
        if arr is not None:
            out["crossed_edges"] = list(self.crossed_edges(arr))
        return out


@dataclass
class SaturationReport:
    k: int
    l: int
    saturated: bool
    addable: list[tuple[tuple[int, int], Corridor]] = field(default_factory=list)

    def to_dict(self, arr: Optional[Arrangement] = None) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "saturated": self.saturated,
            "addable": [{"pair": list(p), "corridor": c.to_dict(arr)} for p, c in self.addable],
        }

    def to_json(self, arr: Optional[Arrangement] = None) -> str:
        return json.dumps(self.to_dict(arr), indent=2)


def residual_budget(arr: Arrangement, e: int, k: int) -> int:
    c = arr.cr[e]
    if c > k:
        raise ValueError(f"edge {e} already has {c} > {k} crossings")
    return k - c


def edge_caps(arr: Arrangement, u: int, v: int, k: int, l: int) -> dict[int, int]:
    d = arr.drawing
    ends = {u, v}
    caps = {}
    for e in d.edges:
        adj = 1 if ends & {e.tail, e.head} else 0
        caps[e.id] = max(0, min(k - arr.cr[e.id], l - adj))
    return caps


class _Tables:
    """CSR incidence tables for the kernel, built once per arrangement."""

    def __init__(self, arr: Arrangement):
        d = arr.drawing
        self.edge_index = {e.id: i for i, e in enumerate(d.edges)}
        n_faces = len(arr.faces)
        rows: list[list[tuple[int, int]]] = [[] for _ in range(n_faces)]
        for a in arr.arcs:
            f1, f2 = arr.arc_faces(a.id)
            rows[f1].append((a.id, f2))
            if f2 != f1:
                rows[f2].append((a.id, f1))
        ptr = [0]
        arcs, nbs = [], []
        for r in rows:
            r.sort()
            arcs.extend(a for a, _ in r)
            nbs.extend(g for _, g in r)
            ptr.append(len(arcs))
        self.face_ptr = np.array(ptr, np.int64)
        self.face_arc = np.array(arcs, np.int64)
        self.face_nb = np.array(nbs, np.int64)
        self.arc_edge = np.array([self.edge_index[a.edge] for a in arr.arcs], np.int64)
        self.n_faces = n_faces


def _tables(arr: Arrangement) -> _Tables:
    t = arr.__dict__.get("_corridor_tables")
    if t is None:
        t = _Tables(arr)
        arr.__dict__["_corridor_tables"] = t
    return t


def _check_pair(d: Drawing, u: int, v: int) -> None:
    if u == v:
        raise ValueError("endpoints must differ")
    for w in (u, v):
        if w not in d.vertex_map:
            raise KeyError(f"unknown vertex {w}")
    if d.is_adjacent(u, v):
        raise ValueError(f"{u} and {v} are already adjacent")


def addable(d: Drawing, arr: Arrangement, u: int, v: int, k: int, l: int) -> Optional[Corridor]:
    """First corridor (fewest crossings, then lexicographic) for a new edge uv."""
    _check_pair(d, u, v)
    t = _tables(arr)
    caps = edge_caps(arr, u, v, k, l)
    cap = np.zeros(len(t.edge_index), np.int64)
    for e, c in caps.items():
        cap[t.edge_index[e]] = c
    starts = np.array(arr.vertex_faces[u], np.int64)
    goal = np.zeros(t.n_faces, np.bool_)
    goal[list(arr.vertex_faces[v])] = True
    out_faces = np.zeros(k + 1, np.int64)
    out_arcs = np.zeros(max(k, 1), np.int64)
    c = _kernels.corridor_search(t.face_ptr, t.face_arc, t.face_nb, t.arc_edge, cap, starts, goal, k, out_faces, out_arcs)
    if c < 0:
        return None
    steps = tuple((int(out_faces[i]), int(out_arcs[i])) for i in range(c))
    return Corridor(u, steps, int(out_faces[c]), v)


def non_adjacent_pairs(d: Drawing) -> list[tuple[int, int]]:
    ids = [v.id for v in d.vertices]
    return [(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :] if not d.is_adjacent(a, b)]


def _require_valid(arr: Arrangement, k: int, l: int) -> None:
    kp = check_k_plane(arr, k)
    if not kp.ok:
        raise ValueError(f"drawing is not {k}-plane: {kp.detail}")
    ls = check_l_simple(arr, l)
    if not ls.ok:
        raise ValueError(f"drawing is not {l}-simple: {ls.detail}")


def is_saturated(
    d: Drawing, k: int, l: int, arr: Optional[Arrangement] = None, first_only: bool = False
) -> SaturationReport:
    """Run the corridor search over all non-adjacent pairs in lexicographic order."""
    arr = arr if arr is not None else build(d)
    _require_valid(arr, k, l)
    found = []
    for u, v in non_adjacent_pairs(d):
        c = addable(d, arr, u, v, k, l)
        if c is not None:
            found.append(((u, v), c))
            if first_only:
                break
    return SaturationReport(k, l, not found, found)


# -- independent oracle ---------------------------------------------------------------


def brute_force_corridors(arr: Arrangement, u: int, v: int, k: int, l: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every admissible (faces, arcs) sequence with up to two crossings.

    Works directly from the face boundary walks rather than the kernel
    tables, and lists all sequences instead of stopping at the first one.
    """
    if k > 2:
        raise ValueError("the exhaustive enumerator only covers k <= 2")
    d = arr.drawing
    ends = {u, v}

    def cap(e: int) -> int:
        edge = d.edge_map[e]
        adj = 1 if ends & {edge.tail, edge.head} else 0
        return min(k - arr.cr[e], l - adj)

    def exits(f: int):
        seen = set()
        for h in arr.faces[f].half_edges:
            a = h >> 1
            g = arr.half_edge_face[h ^ 1]
            if (a, g) not in seen:
                seen.add((a, g))
                yield a, g

    def ok(arcs) -> bool:
        use = Counter(arr.arcs[a].edge for a in arcs)
        return all(n <= cap(e) for e, n in use.items())

    starts = [f.id for f in arr.faces if u in f.incident_vertices]
    goals = {f.id for f in arr.faces if v in f.incident_vertices}
    out = []
    for f0 in starts:
        if f0 in goals:
            out.append(((f0,), ()))
        if k < 1:
            continue
        for a1, f1 in exits(f0):
            if not ok([a1]):
                continue
            if f1 in goals:
                out.append(((f0, f1), (a1,)))
            if k < 2:
                continue
            for a2, f2 in exits(f1):
                if ok([a1, a2]) and f2 in goals:
                    out.append(((f0, f1, f2), (a1, a2)))
    return out


def brute_force_addable(arr: Arrangement, u: int, v: int, k: int, l: int) -> bool:
    return bool(brute_force_corridors(arr, u, v, k, l))


def brute_force_saturated(d: Drawing, k: int, l: int, arr: Optional[Arrangement] = None) -> bool:
    arr = arr if arr is not None else build(d)
    return not any(brute_force_addable(arr, u, v, k, l) for u, v in non_adjacent_pairs(d))


# -- isolated vertices in special cells --------------------------------------------------


def place_isolated_vertices(d: Drawing, arr: Optional[Arrangement] = None) -> Drawing:
    """Put one isolated vertex into each special cell that has none."""
    arr = arr if arr is not None else build(d)
    special = find_special(arr)
    out = d
    for f in special.special_cells:
        if arr.faces[f].isolated:
            continue
        out, _ = out.with_vertex(arr.interior_point(f))
    return out


# -- the n = 3 case of the 3-simple bound ----------------------------------------------------


@dataclass
class Adjudication:
    saturated_kernel: bool
    saturated_oracle: bool
    n: int
    e: int
    stated_value: int = 3

    @property
    def consistent(self) -> bool:
        return self.saturated_kernel == self.saturated_oracle

    @property
    def implied_upper_bound(self) -> Optional[int]:
        return self.e if self.saturated_kernel and self.consistent else None

    @property
    def conflicts_with_stated(self) -> bool:
        b = self.implied_upper_bound
        return b is not None and b < self.stated_value

    def lines(self) -> list[str]:
        verdict = "saturated" if self.saturated_kernel else "not saturated"
        out = [
            f"propeller(2) at k=2, l=3: {verdict} (corridor search: {self.saturated_kernel}, "
            f"exhaustive enumerator: {self.saturated_oracle})",
        ]
        if self.implied_upper_bound is not None:
            out.append(f"implied bound: s_2^3(3) <= {self.implied_upper_bound}")
        else:
            out.append("implied bound: none (drawing is not saturated)")
        if self.conflicts_with_stated:
            out.append(f"FLAG: conflicts with the stated value s_2^3(3) = {self.stated_value}")
        return out


def adjudicate_n3() -> Adjudication:
    from .constructions import propeller

    d = propeller(2)
    arr = build(d)
    return Adjudication(
        saturated_kernel=is_saturated(d, 2, 3, arr).saturated,
        saturated_oracle=brute_force_saturated(d, 2, 3, arr),
        n=d.n,
        e=d.e,
    )
