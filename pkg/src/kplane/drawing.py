"""Topological graph drawings with polyline edges, validation and file I/O."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .geometry import (
    Disjoint,
    Overlap,
    Point,
    ProperCrossing,
    Segment,
    SharedEndpoint,
    Touch,
    crossing_parameter,
    format_rational,
    intersect_segments,
    on_segment,
    to_rational,
)


@dataclass(frozen=True)
class Vertex:
    id: int
    location: Point


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    points: tuple[Point, ...]

    def segments(self) -> list[Segment]:
        return [Segment(p, q) for p, q in zip(self.points, self.points[1:])]

    def other(self, v: int) -> int:
        if v == self.tail:
            return self.head
        if v == self.head:
            return self.tail
        raise ValueError(f"vertex {v} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class Drawing:
    """Immutable drawing; vertices and edges are kept sorted by id."""

    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    @cached_property
    def vertex_map(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def incidence(self) -> dict[int, list[int]]:
        inc: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            for w in (e.tail, e.head):
                if w in inc:
                    inc[w].append(e.id)
        return inc

    @cached_property
    def adjacent_pairs(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset((e.tail, e.head)) for e in self.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    def location(self, v: int) -> Point:
        return self.vertex_map[v].location

    def degree(self, v: int) -> int:
        if v not in self.vertex_map:
            raise KeyError(f"unknown vertex id {v}")
        return len(self.incidence[v])

    def is_adjacent(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.adjacent_pairs

    def next_vertex_id(self) -> int:
        return max((v.id for v in self.vertices), default=-1) + 1

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    def with_vertex(self, location: Point) -> tuple["Drawing", int]:
        vid = self.next_vertex_id()
        return Drawing(self.vertices + (Vertex(vid, location),), self.edges), vid

    def with_edge(self, tail: int, head: int, points: Sequence[Point]) -> tuple["Drawing", int]:
        eid = self.next_edge_id()
        return Drawing(self.vertices, self.edges + (Edge(eid, tail, head, tuple(points)),)), eid

    def without_vertices(self, ids: Iterable[int]) -> "Drawing":
        drop = set(ids)
        return Drawing(
            tuple(v for v in self.vertices if v.id not in drop),
            tuple(e for e in self.edges if e.tail not in drop and e.head not in drop),
        )

    def without_edges(self, ids: Iterable[int]) -> "Drawing":
        drop = set(ids)
        return Drawing(self.vertices, tuple(e for e in self.edges if e.id not in drop))


def degree(d: Drawing, v: int) -> int:
    return d.degree(v)


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    entities: tuple
    detail: str = ""

    def as_dict(self) -> dict:
        return {"rule": self.rule, "entities": list(self.entities), "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def as_dict(self) -> dict:
        return {"valid": self.ok, "violations": [v.as_dict() for v in self.violations]}


@dataclass(frozen=True)
class CrossingRecord:
    """A proper crossing between segment `seg_a` of edge_a and `seg_b` of edge_b."""

    edge_a: int
    seg_a: int
    t_a: Fraction
    edge_b: int
    seg_b: int
    t_b: Fraction
    point: Point


class DrawingError(ValueError):
    """Raised when an operation needs a valid drawing and gets an invalid one."""

    def __init__(self, report: ValidationReport):
        self.report = report
        first = report.violations[0]
        super().__init__(f"invalid drawing: {first.rule} {first.entities} {first.detail}".rstrip())


def _structural_violations(d: Drawing) -> list[Violation]:
    out: list[Violation] = []
    seen_ids: set[int] = set()
    for v in d.vertices:
        if v.id in seen_ids:
            out.append(Violation("duplicate-vertex-id", (v.id,)))
        seen_ids.add(v.id)
    by_loc: dict[Point, list[int]] = defaultdict(list)
    for v in d.vertices:
        by_loc[v.location].append(v.id)
    for ids in by_loc.values():
        if len(ids) > 1:
            out.append(Violation("coincident-vertices", tuple(ids)))

    seen_edges: set[int] = set()
    pairs: dict[frozenset, int] = {}
    for e in d.edges:
        if e.id in seen_edges:
            out.append(Violation("duplicate-edge-id", (e.id,)))
        seen_edges.add(e.id)
        if e.tail not in d.vertex_map or e.head not in d.vertex_map:
            out.append(Violation("unknown-vertex", (e.id,), f"{e.tail}-{e.head}"))
            continue
        if e.tail == e.head:
            out.append(Violation("loop", (e.id,)))
            continue
        key = frozenset((e.tail, e.head))
        if key in pairs:
            out.append(Violation("multi-edge", (pairs[key], e.id)))
        else:
            pairs[key] = e.id
        if len(e.points) < 2:
            out.append(Violation("short-polyline", (e.id,)))
            continue
        if e.points[0] != d.location(e.tail) or e.points[-1] != d.location(e.head):
            out.append(Violation("endpoint-mismatch", (e.id,)))
        for i, (p, q) in enumerate(zip(e.points, e.points[1:])):
            if p == q:
                out.append(Violation("repeated-point", (e.id,), f"index {i}"))
    return out


def _segment_table(d: Drawing):
    rows = []
    for e in d.edges:
        for i, (p, q) in enumerate(zip(e.points, e.points[1:])):
            rows.append(
                (min(p.x, q.x), max(p.x, q.x), min(p.y, q.y), max(p.y, q.y), e.id, i, Segment(p, q))
            )
    rows.sort(key=lambda r: (r[0], r[4], r[5]))
    return rows


def candidate_pairs(rows):
    """Pairs of segment rows whose bounding boxes meet (sweep over x)."""
    for i, r in enumerate(rows):
        xmax = r[1]
        for j in range(i + 1, len(rows)):
            s = rows[j]
            if s[0] > xmax:
                break
            if s[3] < r[2] or r[3] < s[2]:
                continue
            yield r, s


def scan(d: Drawing) -> tuple[ValidationReport, list[CrossingRecord]]:
    """Validate `d` and collect every proper crossing between distinct edges."""
    violations = _structural_violations(d)
    if violations:
        return ValidationReport(violations), []

    crossings: list[CrossingRecord] = []
    edge_map = d.edge_map
    n_segs = {e.id: len(e.points) - 1 for e in d.edges}

    for r, s in candidate_pairs(_segment_table(d)):
        e_id, i, sr = r[4], r[5], r[6]
        f_id, j, ss = s[4], s[5], s[6]
        kind = intersect_segments(sr, ss)
        if isinstance(kind, Disjoint):
            continue
        if e_id == f_id:
            if abs(i - j) == 1 and isinstance(kind, SharedEndpoint):
                continue
            violations.append(Violation("self-intersection", (e_id,), f"segments {min(i, j)},{max(i, j)}"))
            continue
        if isinstance(kind, ProperCrossing):
            if e_id < f_id:
                a, sa, ta_seg, b, sb, tb_seg = e_id, i, sr, f_id, j, ss
            else:
                a, sa, ta_seg, b, sb, tb_seg = f_id, j, ss, e_id, i, sr
            crossings.append(
                CrossingRecord(
                    a, sa, crossing_parameter(ta_seg, tb_seg), b, sb, crossing_parameter(tb_seg, ta_seg), kind.point
                )
            )
        elif isinstance(kind, SharedEndpoint):
            e, f = edge_map[e_id], edge_map[f_id]
            common = {e.tail, e.head} & {f.tail, f.head}
            if not any(d.location(w) == kind.point for w in common):
                violations.append(Violation("touch", (e_id, f_id), f"at {kind.point}"))
        elif isinstance(kind, Touch):
            violations.append(Violation("touch", (e_id, f_id), f"at {kind.point}"))
        elif isinstance(kind, Overlap):
            violations.append(Violation("overlap", (e_id, f_id)))

    # polylines may not pass through vertices other than their own endpoints
    for e in d.edges:
        last = n_segs[e.id] - 1
        for v in d.vertices:
            p = v.location
            for i, sg in enumerate(e.segments()):
                if not on_segment(p, sg):
                    continue
                allowed = (i == 0 and p == sg.a and v.id == e.tail) or (i == last and p == sg.b and v.id == e.head)
                if not allowed:
                    violations.append(Violation("through-vertex", (e.id, v.id)))
                    break

    by_point: dict[Point, list[CrossingRecord]] = defaultdict(list)
    for c in crossings:
        by_point[c.point].append(c)
    for p, recs in by_point.items():
        if len(recs) > 1:
            edges = sorted({c.edge_a for c in recs} | {c.edge_b for c in recs})
            violations.append(Violation("triple-point", tuple(edges), f"at {p}"))

    return ValidationReport(violations), crossings


def validate(d: Drawing) -> ValidationReport:
    """Report every violated drawing invariant; an empty report means valid."""
    report, _ = scan(d)
    return report


# -- file format --------------------------------------------------------------


class DrawingFormatError(ValueError):
    def __init__(self, message: str, locus: str = ""):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)


def to_dict(d: Drawing) -> dict:
    return {
        "vertices": [
            {"id": v.id, "x": format_rational(v.location.x), "y": format_rational(v.location.y)} for v in d.vertices
        ],
        "edges": [
            {
                "id": e.id,
                "tail": e.tail,
                "head": e.head,
                "points": [[format_rational(p.x), format_rational(p.y)] for p in e.points],
            }
            for e in d.edges
        ],
    }


def serialize(d: Drawing) -> str:
    return json.dumps(to_dict(d), indent=2) + "\n"


def _rational_field(value, locus: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DrawingFormatError("expected a rational string", locus)
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DrawingFormatError(str(exc), locus) from None


def _int_field(obj: dict, name: str, locus: str) -> int:
    if name not in obj:
        raise DrawingFormatError(f"missing field {name!r}", locus)
    value = obj[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DrawingFormatError(f"field {name!r} must be an integer", f"{locus}.{name}")
    return value


def from_dict(data) -> Drawing:
    if not isinstance(data, dict):
        raise DrawingFormatError("top level must be an object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise DrawingFormatError(f"missing field {key!r}")
        if not isinstance(data[key], list):
            raise DrawingFormatError("must be a list", key)

    vertices = []
    seen: set[int] = set()
    for i, item in enumerate(data["vertices"]):
        locus = f"vertices[{i}]"
        if not isinstance(item, dict):
            raise DrawingFormatError("must be an object", locus)
        vid = _int_field(item, "id", locus)
        if vid in seen:
            raise DrawingFormatError(f"duplicate vertex id {vid}", f"{locus}.id")
        seen.add(vid)
        for name in ("x", "y"):
            if name not in item:
                raise DrawingFormatError(f"missing field {name!r}", locus)
        loc = Point(_rational_field(item["x"], f"{locus}.x"), _rational_field(item["y"], f"{locus}.y"))
        vertices.append(Vertex(vid, loc))

    edges = []
    seen = set()
    for i, item in enumerate(data["edges"]):
        locus = f"edges[{i}]"
        if not isinstance(item, dict):
            raise DrawingFormatError("must be an object", locus)
        eid = _int_field(item, "id", locus)
        if eid in seen:
            raise DrawingFormatError(f"duplicate edge id {eid}", f"{locus}.id")
        seen.add(eid)
        tail = _int_field(item, "tail", locus)
        head = _int_field(item, "head", locus)
        pts = item.get("points")
        if not isinstance(pts, list):
            raise DrawingFormatError("field 'points' must be a list", f"{locus}.points")
        points = []
        for j, pair in enumerate(pts):
            ploc = f"{locus}.points[{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise DrawingFormatError("point must be a [x, y] pair", ploc)
            points.append(Point(_rational_field(pair[0], ploc), _rational_field(pair[1], ploc)))
        edges.append(Edge(eid, tail, head, tuple(points)))
    return Drawing(tuple(vertices), tuple(edges))


def parse(text: str, check: bool = True) -> Drawing:
    """Parse the JSON drawing format; with `check`, invalid geometry raises DrawingError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DrawingFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    d = from_dict(data)
    if check:
        report = validate(d)
        if not report.ok:
            raise DrawingError(report)
    return d


def load(path, check: bool = True) -> Drawing:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), check=check)


def save(d: Drawing, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(d))


def straight_edge(d: Drawing, u: int, v: int) -> tuple[Point, Point]:
    return (d.location(u), d.location(v))


def make_drawing(points: Sequence, edges: Sequence[tuple] = ()) -> Drawing:
    """Build a drawing from coordinates; edges are (u, v) or (u, v, [bends...])."""
    vertices = tuple(Vertex(i, Point(to_rational(x), to_rational(y))) for i, (x, y) in enumerate(points))
    locs = {v.id: v.location for v in vertices}
    out = []
    for i, spec in enumerate(edges):
        u, v = spec[0], spec[1]
        bends = [Point(to_rational(x), to_rational(y)) for x, y in (spec[2] if len(spec) > 2 else [])]
        out.append(Edge(i, u, v, (locs[u], *bends, locs[v])))
    return Drawing(vertices, tuple(out))
