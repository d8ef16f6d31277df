"""Greedy-saturation experiments and bound tables."""

from __future__ import annotations

import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import build
from .constructions import f_bound, family_2simple, family_3simple, two_thirds
from .drawing import Drawing, Vertex
from .geometry import Point
from .router import DEFAULT_POLICY, RoutingPolicy, greedy_saturate
from .saturation import is_saturated, place_isolated_vertices
from .structure import check_claim1, check_claim2, check_claim3, check_k_plane, check_l_simple

COORD_RANGE = 1000


def random_points(n: int, seed: int) -> Drawing:
    """n isolated vertices at distinct integer points, reproducible from seed."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    seen: set[tuple[int, int]] = set()
    while len(seen) < n:
        seen.add((rng.randrange(COORD_RANGE + 1), rng.randrange(COORD_RANGE + 1)))
    pts = sorted(seen, key=lambda p: (rng.random(), p))
    return Drawing(tuple(Vertex(i, Point(Fraction(x), Fraction(y))) for i, (x, y) in enumerate(pts)), ())


def cell_seed(n: int, seed: int) -> int:
    return 1_000_003 * seed + n


@dataclass
class CellResult:
    n: int
    seed: int
    k: int
    l: int
    edges: int
    insertions: int
    saturated: bool
    k_plane: bool
    l_simple: bool
    claim1: Optional[bool]
    claim2: Optional[bool]
    claim3: Optional[bool]
    at_least_n_minus_1: bool
    at_most_5n_minus_10: Optional[bool]
    error: Optional[str] = None

    @property
    def all_ok(self) -> bool:
        checks = [self.saturated, self.k_plane, self.l_simple, self.claim1, self.claim2, self.at_least_n_minus_1]
        checks.append(self.at_most_5n_minus_10)
        if self.l == 3:
            checks.append(self.claim3)
        return self.error is None and all(c is not False for c in checks)


def run_cell(n: int, seed: int, k: int = 2, l: int = 1, policy: RoutingPolicy = DEFAULT_POLICY) -> tuple[CellResult, Drawing]:
    d0 = random_points(n, cell_seed(n, seed))
    res = greedy_saturate(d0, k, l, policy, seed)
    d, arr = res.drawing, res.arrangement
    sat = is_saturated(d, k, l, arr).saturated
    two = k == 2
    c1 = check_claim1(arr).ok if two else None
    c2 = check_claim2(d, arr).ok if two and l == 1 else None
    c3 = check_claim3(d, arr).ok if two and l == 3 and not any(arr.cr[e] == 0 for _, e in _flags(d)) else None
    return (
        CellResult(
            n=n,
            seed=seed,
            k=k,
            l=l,
            edges=d.e,
            insertions=len(res.trace),
            saturated=sat,
            k_plane=check_k_plane(arr, k).ok,
            l_simple=check_l_simple(arr, l).ok,
            claim1=c1,
            claim2=c2,
            claim3=c3,
            at_least_n_minus_1=d.e >= n - 1,
            at_most_5n_minus_10=(d.e <= 5 * n - 10) if (two and l == 1 and n >= 3) else None,
        ),
        d,
    )


def _flags(d: Drawing):
    return [(v.id, d.incidence[v.id][0]) for v in d.vertices if d.degree(v.id) == 1]


def _cell_job(args):
    n, seed, k, l, policy = args
    try:
        return run_cell(n, seed, k, l, policy)[0]
    except Exception as exc:  # reported per cell, never swallowed silently
        return CellResult(n, seed, k, l, -1, 0, False, False, False, None, None, None, False, None, repr(exc))


@dataclass
class ExperimentSpec:
    n_values: list[int]
    seeds: list[int]
    k: int = 2
    l: int = 1
    policy: RoutingPolicy = DEFAULT_POLICY
    workers: int = 1


@dataclass
class ExperimentSummary:
    spec: dict
    cells: list[CellResult] = field(default_factory=list)

    def per_n(self) -> dict[int, dict]:
        out = {}
        for n in sorted({c.n for c in self.cells}):
            es = [c.edges for c in self.cells if c.n == n and c.error is None]
            out[n] = {
                "runs": sum(1 for c in self.cells if c.n == n),
                "min_edges": min(es) if es else None,
                "median_edges": statistics.median(es) if es else None,
                "all_ok": all(c.all_ok for c in self.cells if c.n == n),
            }
        return out

    @property
    def pass_rate(self) -> float:
        return sum(c.all_ok for c in self.cells) / len(self.cells) if self.cells else 1.0

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "per_n": {str(n): row for n, row in self.per_n().items()},
            "pass_rate": self.pass_rate,
            "cells": [asdict(c) for c in self.cells],
        }


def run_experiment(spec: ExperimentSpec) -> ExperimentSummary:
    jobs = [(n, s, spec.k, spec.l, spec.policy) for n in spec.n_values for s in spec.seeds]
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            cells = list(pool.map(_cell_job, jobs))
    else:
        cells = [_cell_job(j) for j in jobs]
    meta = {
        "n": spec.n_values,
        "seeds": spec.seeds,
        "k": spec.k,
        "l": spec.l,
        "policy": {"order": spec.policy.order, "max_retries": spec.policy.max_retries},
    }
    return ExperimentSummary(meta, cells)


# -- bounds table ----------------------------------------------------------------------------


@dataclass
class BoundsRow:
    n: int
    family2_edges: int
    f_n: int
    family2_saturated: bool
    family3_edges: int
    two_thirds: int
    family3_saturated: bool
    n_minus_1: int
    min_greedy_edges: Optional[int] = None


def bounds_table(n_max: int, greedy_seeds: int = 0) -> list[BoundsRow]:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows = []
    for n in range(1, n_max + 1):
        d2, d3 = family_2simple(n), family_3simple(n)
        greedy = None
        if greedy_seeds and n >= 1:
            greedy = min(run_cell(n, s)[0].edges for s in range(greedy_seeds))
        rows.append(
            BoundsRow(
                n=n,
                family2_edges=d2.e,
                f_n=f_bound(n),
                family2_saturated=is_saturated(d2, 2, 2).saturated,
                family3_edges=d3.e,
                two_thirds=two_thirds(n),
                family3_saturated=is_saturated(d3, 2, 3).saturated,
                n_minus_1=n - 1,
                min_greedy_edges=greedy,
            )
        )
    return rows


def format_bounds(rows: list[BoundsRow]) -> str:
    head = ["n", "family2", "f(n)", "sat2", "family3", "floor(2n/3)", "sat3", "n-1", "greedy_min"]
    lines = ["\t".join(head)]
    for r in rows:
        lines.append(
            "\t".join(
                str(x)
                for x in (
                    r.n,
                    r.family2_edges,
                    r.f_n,
                    "yes" if r.family2_saturated else "no",
                    r.family3_edges,
                    r.two_thirds,
                    "yes" if r.family3_saturated else "no",
                    r.n_minus_1,
                    "-" if r.min_greedy_edges is None else r.min_greedy_edges,
                )
            )
        )
    return "\n".join(lines) + "\n"


def discharge_pipeline(d: Drawing):
    """Flag removal, isolated-vertex placement, then the weight-1 certificate."""
    from .discharging import remove_empty_flags, thm1_charges

    g = remove_empty_flags(d)
    g = place_isolated_vertices(g)
    return g, thm1_charges(g, build(g))
