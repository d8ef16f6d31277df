"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

Run under pytest (lines appear in the "acceptance criteria" summary section)
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import random
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from helpers import brute_crossings, brute_pair_crossings, random_drawing, skeleton_components  # noqa: E402
from kplane.arrangement import build  # noqa: E402
from kplane.constructions import complete_drawing, f_bound, family_2simple, family_3simple, propeller  # noqa: E402
from kplane.experiments import discharge_pipeline, random_points, cell_seed  # noqa: E402
from kplane.router import RealizationFailed, greedy_saturate, realize_into  # noqa: E402
from kplane.saturation import (  # noqa: E402
    addable,
    adjudicate_n3,
    brute_force_addable,
    brute_force_saturated,
    is_saturated,
    non_adjacent_pairs,
)
from kplane.structure import check_claim1, check_claim2, check_k_plane, check_l_simple, find_special  # noqa: E402

GREEDY_N = range(2, 11)
GREEDY_SEEDS = range(12)


def _report(num: int, failures: list, detail: str) -> None:
    status = "PASS" if not failures else "FAIL"
    extra = f"; first failures: {failures[:3]}" if failures else ""
    ACCEPTANCE_LINES.append(f"criterion {num}: {status} ({detail}{extra})")
    print(ACCEPTANCE_LINES[-1])


@functools.lru_cache(maxsize=None)
def _greedy_runs():
    """(n, seed, GreedyResult) for every criterion-4 cell, built once."""
    out = []
    for n in GREEDY_N:
        for s in GREEDY_SEEDS:
            out.append((n, s, greedy_saturate(random_points(n, cell_seed(n, s)), 2, 1, seed=s)))
    return tuple(out)


def _euler_ok(d, arr) -> bool:
    return len(arr.nodes) - len(arr.arcs) + len(arr.faces) == 1 + skeleton_components(d)


def _crossings_ok(d, arr) -> bool:
    return dict(brute_crossings(d)) == dict(arr.cr)


def test_criterion_1_family_2simple():
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 41):
        d = family_2simple(n)
        arr = build(d)
        ok = (
            d.n == n
            and d.e == f_bound(n)
            and check_k_plane(arr, 2).ok
            and check_l_simple(arr, 2).ok
            and is_saturated(d, 2, 2, arr).saturated
        )
        if not ok:
            failures.append(n)
    dt = time.perf_counter() - t0
    _report(1, failures, f"family_2simple n=1..40, {dt:.1f}s")
    assert not failures
    assert dt < 120


def test_criterion_2_family_3simple():
    t0 = time.perf_counter()
    failures = []
    for n in range(1, 41):
        if n == 3:
            continue
        d = family_3simple(n)
        arr = build(d)
        ok = (
            d.n == n
            and d.e == (2 * n) // 3
            and check_k_plane(arr, 2).ok
            and check_l_simple(arr, 3).ok
            and is_saturated(d, 2, 3, arr).saturated
        )
        if not ok:
            failures.append(n)
    dt = time.perf_counter() - t0
    _report(2, failures, f"family_3simple n=1..40 without 3, {dt:.1f}s")
    assert not failures
    assert dt < 120


def test_criterion_3_propellers():
    failures = []
    for m in range(2, 11):
        d = propeller(m)
        arr = build(d)
        l = 3 if m == 2 else 2
        ok = (
            d.n == m + 1
            and d.e == m
            and all(c == 2 for c in brute_crossings(d).values())
            and 0 in find_special(arr).special_cells
            and is_saturated(d, 2, l, arr).saturated
        )
        if not ok:
            failures.append(m)
    _report(3, failures, "propeller m=2..10")
    assert not failures


def test_criterion_4_greedy_consistency():
    runs = _greedy_runs()
    failures = []
    for n, s, res in runs:
        d, arr = res.drawing, res.arrangement
        ok = (
            is_saturated(d, 2, 1, arr).saturated
            and brute_force_saturated(d, 2, 1, arr)
            and d.e >= n - 1
            and check_claim2(d, arr).ok
            and check_claim1(arr).ok
            and (n < 3 or d.e <= 5 * n - 10)
        )
        if not ok:
            failures.append((n, s))
    _report(4, failures, f"{len(runs)} greedy drawings, n=2..10, k=2, l=1")
    assert len(runs) >= 100
    assert not failures


def test_criterion_5_discharging():
    runs = _greedy_runs()
    failures = []
    edgeless = 0
    for n, s, res in runs:
        _, rep = discharge_pipeline(res.drawing)
        if rep.edgeless:
            edgeless += 1
        if not rep.certified or not rep.conserved:
            failures.append((n, s))
        elif not rep.edgeless and rep.min_charge < 1:
            failures.append((n, s))
    _report(5, failures, f"{len(runs)} drawings certified; {edgeless} reduce to the single-vertex base case")
    assert not failures


@functools.lru_cache(maxsize=None)
def _random_drawings():
    """Random drawings with at most 8 edges; rejected ones are kept separately for criterion 7."""
    rng = random.Random(20240607)
    usable, rejected = [], []
    while len(usable) < 220:
        d = random_drawing(rng, rng.randint(2, 7), rng.randint(0, 8))
        arr = build(d)
        good = check_k_plane(arr, 2).ok and check_l_simple(arr, 3).ok
        (usable if good else rejected).append(d)
    return tuple(usable), tuple(rejected)


def _oracle_corpus():
    corpus = list(_random_drawings()[0])
    corpus += [propeller(2), propeller(3), propeller(4), complete_drawing(3), family_2simple(6), family_3simple(5)]
    return corpus


def test_criterion_6_oracle_equivalence():
    failures = []
    checked = pairs = 0
    drawings = set()
    for i, d in enumerate(_oracle_corpus()):
        assert d.e <= 8
        arr = build(d)
        for l in (1, 2, 3):
            if not (check_k_plane(arr, 2).ok and check_l_simple(arr, l).ok):
                continue
            checked += 1
            drawings.add(i)
            for u, v in non_adjacent_pairs(d):
                pairs += 1
                fast = addable(d, arr, u, v, 2, l) is not None
                if fast != brute_force_addable(arr, u, v, 2, l):
                    failures.append((i, l, u, v))
    _report(6, failures, f"{len(drawings)} drawings, {checked} (drawing, l) cases, {pairs} vertex pairs")
    assert len(drawings) >= 200
    assert not failures


def test_criterion_7_arrangement_soundness():
    drawings = list(_oracle_corpus()) + list(_random_drawings()[1])
    drawings += [family_2simple(n) for n in range(1, 17)] + [family_3simple(n) for n in range(1, 17)]
    drawings += [propeller(m) for m in range(2, 11)]
    drawings += [res.drawing for _, _, res in _greedy_runs()]
    failures = []
    for i, d in enumerate(drawings):
        arr = build(d)
        if not (_euler_ok(d, arr) and _crossings_ok(d, arr)):
            failures.append(i)
    _report(7, failures, f"{len(drawings)} arrangements")
    assert not failures


def _construction_cases():
    cases = [(propeller(m), 2) for m in range(3, 9)] + [(propeller(2), 3)]
    cases += [(family_2simple(n), 2) for n in (4, 7, 8, 11)]
    cases += [(family_3simple(n), 3) for n in (3, 6, 8)]
    return cases


def _realization_ok(d2, eid: int, crossed) -> bool:
    got = Counter()
    for f in d2.edges:
        if f.id != eid:
            c = brute_pair_crossings(d2, eid, f.id)
            if c:
                got[f.id] = c
    return got == Counter(crossed)


def test_criterion_8_router_soundness():
    failures = []
    realized = failed = 0
    # greedy insertions, checked on the drawing at the moment each edge went in
    for n, s, res in _greedy_runs():
        final = res.drawing
        for t in res.trace:
            got = Counter({f: brute_pair_crossings(final, t.edge, f) for f in range(t.edge)})
            got = +got
            realized += 1
            if got != Counter(t.crossed_edges):
                failures.append(("greedy", n, s, t.edge))
        bc = brute_crossings(final)
        if any(c > 2 for c in bc.values()) or not check_l_simple(res.arrangement, 1).ok:
            failures.append(("greedy-final", n, s))
    # remove one edge from each construction and realize every available corridor
    for d, l in _construction_cases():
        for e in d.edges:
            d0 = d.without_edges([e.id])
            arr0 = build(d0)
            for u, v in non_adjacent_pairs(d0):
                c = addable(d0, arr0, u, v, 2, l)
                if c is None:
                    continue
                try:
                    _, d2, arr2 = realize_into(d0, c, arr0, 2, l)
                except RealizationFailed:
                    failed += 1
                    continue
                realized += 1
                eid = d2.edges[-1].id
                ok = (
                    _realization_ok(d2, eid, c.crossed_edges(arr0))
                    and all(x <= 2 for x in brute_crossings(d2).values())
                    and check_l_simple(arr2, l).ok
                )
                if not ok:
                    failures.append(("construction", d.n, e.id, u, v))
    _report(8, failures, f"{realized} realizations verified, {failed} RealizationFailed")
    assert failed == 0
    assert not failures


def test_criterion_9_n3_adjudication():
    a, b = adjudicate_n3(), adjudicate_n3()
    failures = []
    if a != b:
        failures.append("non-deterministic")
    if not a.consistent:
        failures.append("corridor search and enumerator disagree")
    if a.saturated_oracle != brute_force_saturated(propeller(2), 2, 3):
        failures.append("oracle rerun differs")
    for line in a.lines():
        print(line)
    _report(9, failures, " / ".join(a.lines()))
    assert not failures


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    bad = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            bad += 1
    sys.exit(1 if bad else 0)
