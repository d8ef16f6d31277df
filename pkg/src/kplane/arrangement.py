"""Planarization of a drawing: crossing nodes, arcs, faces and point location.

Half-edge ``h`` of arc ``a`` is ``2*a`` when it runs along the parent edge
(tail to head) and ``2*a + 1`` in the opposite direction.  Every half-edge
has its face on the left.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Optional

from .drawing import Drawing, DrawingError, scan
from .geometry import Point, Segment, compare_directions, on_segment

UNBOUNDED = 0


@dataclass(frozen=True)
class Node:
    id: int
    kind: str  # "vertex" or "crossing"
    location: Point
    vertex: Optional[int] = None
    edges: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class Arc:
    id: int
    edge: int
    index: int
    tail: int
    head: int
    points: tuple[Point, ...]


@dataclass(frozen=True)
class Face:
    id: int
    walks: tuple[tuple[int, ...], ...]
    vertices: tuple[int, ...]
    isolated: tuple[int, ...]
    is_unbounded: bool

    @property
    def incident_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.vertices) | set(self.isolated)))

    @property
    def half_edges(self) -> tuple[int, ...]:
        return tuple(h for w in self.walks for h in w)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({h >> 1 for w in self.walks for h in w}))


class PointOnSkeleton(ValueError):
    pass


class Arrangement:
    """Immutable planarization of a valid drawing.  Use :func:`build`."""

    def __init__(self, drawing: Drawing):
        report, crossings = scan(drawing)
        if not report.ok:
            raise DrawingError(report)
        self.drawing = drawing
        self._make_nodes_and_arcs(crossings)
        self._make_rotations()
        self._trace_walks()
        self._assign_faces()
        self._check_euler()

    # -- construction ---------------------------------------------------------

    def _make_nodes_and_arcs(self, crossings) -> None:
        d = self.drawing
        nodes: list[Node] = []
        self.vertex_node: dict[int, int] = {}
        for v in d.vertices:
            self.vertex_node[v.id] = len(nodes)
            nodes.append(Node(len(nodes), "vertex", v.location, vertex=v.id))

        on_edge: dict[int, list[tuple[int, Fraction, int]]] = defaultdict(list)
        pair_count: Counter = Counter()
        for c in sorted(crossings, key=lambda c: (c.edge_a, c.seg_a, c.t_a, c.edge_b)):
            nid = len(nodes)
            nodes.append(Node(nid, "crossing", c.point, edges=(c.edge_a, c.edge_b)))
            on_edge[c.edge_a].append((c.seg_a, c.t_a, nid))
            on_edge[c.edge_b].append((c.seg_b, c.t_b, nid))
            pair_count[frozenset((c.edge_a, c.edge_b))] += 1

        arcs: list[Arc] = []
        self.edge_arcs: dict[int, list[int]] = {}
        for e in d.edges:
            marks = sorted(on_edge[e.id])
            ids: list[int] = []
            cur_node = self.vertex_node[e.tail]
            cur_pts = [e.points[0]]
            mi = 0
            for i in range(len(e.points) - 1):
                while mi < len(marks) and marks[mi][0] == i:
                    nid = marks[mi][2]
                    p = nodes[nid].location
                    cur_pts.append(p)
                    ids.append(len(arcs))
                    arcs.append(Arc(len(arcs), e.id, len(ids) - 1, cur_node, nid, tuple(cur_pts)))
                    cur_node, cur_pts = nid, [p]
                    mi += 1
                cur_pts.append(e.points[i + 1])
            ids.append(len(arcs))
            arcs.append(Arc(len(arcs), e.id, len(ids) - 1, cur_node, self.vertex_node[e.head], tuple(cur_pts)))
            self.edge_arcs[e.id] = ids

        self.nodes: tuple[Node, ...] = tuple(nodes)
        self.arcs: tuple[Arc, ...] = tuple(arcs)
        self.cr: dict[int, int] = {e.id: len(on_edge[e.id]) for e in d.edges}
        self.pair_crossings: dict[frozenset, int] = dict(pair_count)

    def half_edge_points(self, h: int) -> tuple[Point, ...]:
        pts = self.arcs[h >> 1].points
        return pts if h % 2 == 0 else pts[::-1]

    def origin(self, h: int) -> int:
        a = self.arcs[h >> 1]
        return a.tail if h % 2 == 0 else a.head

    def dest(self, h: int) -> int:
        a = self.arcs[h >> 1]
        return a.head if h % 2 == 0 else a.tail

    def _make_rotations(self) -> None:
        out: dict[int, list[int]] = defaultdict(list)
        for a in self.arcs:
            out[a.tail].append(2 * a.id)
            out[a.head].append(2 * a.id + 1)

        def direction(h):
            p, q = self.half_edge_points(h)[:2]
            return (q.x - p.x, q.y - p.y)

        self.rotation: dict[int, list[int]] = {}
        self._rot_pos: dict[int, int] = {}
        for node, hs in out.items():
            hs.sort(key=cmp_to_key(lambda g, h: compare_directions(direction(g), direction(h))))
            self.rotation[node] = hs
            for i, h in enumerate(hs):
                self._rot_pos[h] = i

    def next_half_edge(self, h: int) -> int:
        node = self.dest(h)
        rot = self.rotation[node]
        return rot[(self._rot_pos[h ^ 1] - 1) % len(rot)]

    def _trace_walks(self) -> None:
        n_half = 2 * len(self.arcs)
        walk_of = [-1] * n_half
        walks: list[tuple[int, ...]] = []
        for start in range(n_half):
            if walk_of[start] >= 0:
                continue
            w = []
            h = start
            while walk_of[h] < 0:
                walk_of[h] = len(walks)
                w.append(h)
                h = self.next_half_edge(h)
            walks.append(tuple(w))
        self.walks = walks
        self.walk_of = walk_of
        self.walk_area2 = [self._walk_area2(w) for w in walks]

    def _walk_area2(self, walk) -> Fraction:
        total = Fraction(0)
        for h in walk:
            pts = self.half_edge_points(h)
            for p, q in zip(pts, pts[1:]):
                total += p.x * q.y - q.x * p.y
        return total

    def _components(self) -> None:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arcs:
            ra, rb = find(a.tail), find(a.head)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        roots = sorted({find(i) for i in range(len(self.nodes))})
        index = {r: i for i, r in enumerate(roots)}
        self.node_component = [index[find(i)] for i in range(len(self.nodes))]
        self.n_components = len(roots)

    def _segment_index(self) -> None:
        segs = []
        for a in self.arcs:
            comp = self.node_component[a.tail]
            for p, q in zip(a.points, a.points[1:]):
                if p.y == q.y:
                    continue
                # half-edge that runs down this segment has the right-hand side on its left
                h_down = 2 * a.id if q.y < p.y else 2 * a.id + 1
                lo, hi = (p, q) if p.y < q.y else (q, p)
                segs.append((lo, hi, h_down, comp))
        self._ray_segments = segs

    def shoot_left(self, p: Point, skip_component: Optional[int] = None) -> Optional[int]:
        """Half-edge first hit by a leftward ray from p, run at height p.y + epsilon."""
        best_key = None
        best_h = None
        px, py = p
        for lo, hi, h_down, comp in self._ray_segments:
            if comp == skip_component:
                continue
            if not (lo.y <= py < hi.y):
                continue
            dxdy = (hi.x - lo.x) / (hi.y - lo.y)
            x = lo.x + (py - lo.y) * dxdy
            if x > px or (x == px and dxdy >= 0):
                continue
            key = (x, dxdy)
            if best_key is None or key > best_key:
                best_key, best_h = key, h_down
        return best_h

    def _assign_faces(self) -> None:
        self._components()
        self._segment_index()
        d = self.drawing

        bounded = [i for i, w in enumerate(self.walks) if self.walk_area2[i] > 0]
        walk_face: dict[int, int] = {w: f + 1 for f, w in enumerate(bounded)}
        self.n_faces = len(bounded) + 1

        outer_walk: dict[int, int] = {}
        for i, w in enumerate(self.walks):
            if self.walk_area2[i] > 0:
                continue
            comp = self.node_component[self.origin(w[0])]
            if comp in outer_walk:
                raise AssertionError(f"component {comp} has two outer walks")
            outer_walk[comp] = i

        comp_points: dict[int, Point] = {}
        for a in self.arcs:
            comp = self.node_component[a.tail]
            m = min(a.points)
            if comp not in comp_points or m < comp_points[comp]:
                comp_points[comp] = m

        comp_face: dict[int, int] = {}

        def face_of_component(c: int) -> int:
            if c in comp_face:
                return comp_face[c]
            h = self.shoot_left(comp_points[c], skip_component=c)
            if h is None:
                f = UNBOUNDED
            else:
                w = self.walk_of[h]
                f = walk_face[w] if w in walk_face else face_of_component(self.node_component[self.origin(h)])
            comp_face[c] = f
            return f

        for c in sorted(outer_walk):
            face_of_component(c)
        self.component_face = comp_face

        half_face = [0] * (2 * len(self.arcs))
        for i, w in enumerate(self.walks):
            f = walk_face[i] if i in walk_face else comp_face[self.node_component[self.origin(w[0])]]
            for h in w:
                half_face[h] = f
        self.half_edge_face = half_face

        isolated: dict[int, list[int]] = defaultdict(list)
        self.isolated_face: dict[int, int] = {}
        for v in d.vertices:
            if d.degree(v.id) == 0:
                f = self._locate_unchecked(v.location)
                isolated[f].append(v.id)
                self.isolated_face[v.id] = f
                comp_face[self.node_component[self.vertex_node[v.id]]] = f

        faces = []
        for f in range(self.n_faces):
            if f == UNBOUNDED:
                walks = []
            else:
                walks = [self.walks[bounded[f - 1]]]
            holes = sorted(outer_walk[c] for c in outer_walk if comp_face[c] == f)
            walks.extend(self.walks[i] for i in holes)
            verts = sorted(
                {self.nodes[self.origin(h)].vertex for w in walks for h in w if self.nodes[self.origin(h)].kind == "vertex"}
            )
            faces.append(Face(f, tuple(walks), tuple(verts), tuple(sorted(isolated[f])), f == UNBOUNDED))
        self.faces: tuple[Face, ...] = tuple(faces)

    def _check_euler(self) -> None:
        lhs = len(self.nodes) - len(self.arcs) + len(self.faces)
        if lhs != 1 + self.n_components:
            raise AssertionError(
                f"Euler relation failed: V-E+F={lhs}, 1+C={1 + self.n_components}"
            )

    # -- queries ------------------------------------------------------------------

    def crossings_per_edge(self) -> dict[int, int]:
        return dict(self.cr)

    def crossings_between(self, e: int, f: int) -> int:
        return self.pair_crossings.get(frozenset((e, f)), 0)

    def common_points(self, e: int, f: int) -> int:
        """Crossings of e and f plus one if they share an endpoint."""
        em, fm = self.drawing.edge_map, self.drawing.edge_map
        if e not in em or f not in fm:
            raise KeyError(f"unknown edge id in ({e}, {f})")
        if e == f:
            raise ValueError("common_points needs two distinct edges")
        a, b = em[e], fm[f]
        shared = 1 if {a.tail, a.head} & {b.tail, b.head} else 0
        return self.crossings_between(e, f) + shared

    def arc_faces(self, a: int) -> tuple[int, int]:
        """(face left of the forward half-edge, face left of the reverse half-edge)."""
        return self.half_edge_face[2 * a], self.half_edge_face[2 * a + 1]

    def on_skeleton(self, p: Point) -> bool:
        for a in self.arcs:
            for q, r in zip(a.points, a.points[1:]):
                if on_segment(p, Segment(q, r)):
                    return True
        return any(n.location == p for n in self.nodes)

    def _locate_unchecked(self, p: Point) -> int:
        h = self.shoot_left(p)
        return UNBOUNDED if h is None else self.half_edge_face[h]

    def locate(self, p: Point) -> Face:
        """The face containing p; p must avoid arcs and nodes."""
        if self.on_skeleton(p):
            raise PointOnSkeleton(f"{p} lies on the arrangement")
        return self.faces[self._locate_unchecked(p)]

    def face_of_vertex_sectors(self, v: int) -> list[int]:
        """Faces incident to graph vertex v, ascending."""
        node = self.vertex_node[v]
        hs = self.rotation.get(node)
        if not hs:
            return [self.isolated_face[v]]
        return sorted({self.half_edge_face[h] for h in hs} | {self.half_edge_face[h ^ 1] for h in hs})

    @cached_property
    def vertex_faces(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, set[int]] = defaultdict(set)
        for f in self.faces:
            for v in f.incident_vertices:
                out[v].add(f.id)
        return {v.id: tuple(sorted(out[v.id])) for v in self.drawing.vertices}

    @cached_property
    def trapezoids(self):
        from .trapezoids import TrapezoidMap

        return TrapezoidMap(self)

    def interior_point(self, face: int | Face) -> Point:
        """A rational point strictly inside the face, verified by locate."""
        f = face.id if isinstance(face, Face) else face
        if f == UNBOUNDED:
            p = self._outside_point()
            if self.locate(p).id == UNBOUNDED:
                return p
        p = self.trapezoids.interior_point_of_face(f)
        if self.locate(p).id != f:
            raise AssertionError(f"interior point {p} does not locate to face {f}")
        return p

    def _outside_point(self) -> Point:
        pts = [n.location for n in self.nodes] + [q for a in self.arcs for q in a.points]
        if not pts:
            return Point(Fraction(0), Fraction(0))
        return Point(max(q.x for q in pts) + 1, max(q.y for q in pts) + 1)

    def components(self) -> list[list[int]]:
        """Node ids of each connected component of the 1-skeleton."""
        out: dict[int, list[int]] = defaultdict(list)
        for i, c in enumerate(self.node_component):
            out[c].append(i)
        return [out[c] for c in sorted(out)]

    # -- dump -----------------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "counts": {
                "nodes": len(self.nodes),
                "arcs": len(self.arcs),
                "faces": len(self.faces),
                "components": self.n_components,
            },
            "nodes": [
                {
                    "id": n.id,
                    "kind": n.kind,
                    "x": str(n.location.x),
                    "y": str(n.location.y),
                    **({"vertex": n.vertex} if n.kind == "vertex" else {"edges": list(n.edges)}),
                }
                for n in self.nodes
            ],
            "arcs": [
                {"id": a.id, "edge": a.edge, "index": a.index, "tail": a.tail, "head": a.head} for a in self.arcs
            ],
            "faces": [
                {
                    "id": f.id,
                    "unbounded": f.is_unbounded,
                    "walks": [list(w) for w in f.walks],
                    "vertices": list(f.vertices),
                    "isolated": list(f.isolated),
                }
                for f in self.faces
            ],
            "crossings_per_edge": {str(e): c for e, c in sorted(self.cr.items())},
        }

    def dump(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def build(d: Drawing) -> Arrangement:
    return Arrangement(d)


def crossings_per_edge(arr: Arrangement) -> dict[int, int]:
    return arr.crossings_per_edge()


def common_points(arr: Arrangement, e: int, f: int) -> int:
    return arr.common_points(e, f)


def locate(arr: Arrangement, p: Point) -> Face:
    return arr.locate(p)


def interior_point(arr: Arrangement, f) -> Point:
    return arr.interior_point(f)
