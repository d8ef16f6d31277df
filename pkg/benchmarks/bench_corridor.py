"""Compare the compiled corridor-search kernel against the plain-Python path.

Run:  python benchmarks/bench_corridor.py [--repeat N]

Both paths get identical numpy tables for every non-adjacent vertex pair of a
few fixed drawings; results must agree exactly.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kplane import _kernels
from kplane.arrangement import build
from kplane.constructions import family_2simple, family_3simple
from kplane.experiments import run_cell
from kplane.saturation import _tables, edge_caps, non_adjacent_pairs


def _jobs(d, arr, k, l):
    t = _tables(arr)
    for u, v in non_adjacent_pairs(d):
        caps = edge_caps(arr, u, v, k, l)
        cap = np.zeros(len(t.edge_index), np.int64)
        for e, c in caps.items():
            cap[t.edge_index[e]] = c
        goal = np.zeros(t.n_faces, np.bool_)
        goal[list(arr.vertex_faces[v])] = True
        yield (t.face_ptr, t.face_arc, t.face_nb, t.arc_edge, cap, np.array(arr.vertex_faces[u], np.int64), goal, k)


def _run(fn, jobs, k):
    out = []
    for j in jobs:
        of = np.zeros(k + 1, np.int64)
        oa = np.zeros(max(k, 1), np.int64)
        c = fn(*j, of, oa)
        out.append((c, tuple(of[: c + 1]) if c >= 0 else (), tuple(oa[:c]) if c > 0 else ()))
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = {
        "family2(40) k=2 l=2": (family_2simple(40), 2, 2),
        "family3(40) k=2 l=3": (family_3simple(40), 2, 3),
        "greedy n=10 k=2 l=1": (run_cell(10, 0)[1], 2, 1),
    }
    print(f"numba available: {_kernels.NUMBA_ENABLED}")
    for name, (d, k, l) in cases.items():
        arr = build(d)
        jobs = list(_jobs(d, arr, k, l))
        if _kernels.NUMBA_ENABLED:
            _run(_kernels.corridor_search, jobs[:1], k)  # compile outside the timer
        timings = {}
        results = {}
        for label, fn in (("python", _kernels.corridor_search_py), ("kernel", _kernels.corridor_search)):
            t0 = time.perf_counter()
            for _ in range(args.repeat):
                results[label] = _run(fn, jobs, k)
            timings[label] = (time.perf_counter() - t0) / args.repeat
        assert results["python"] == results["kernel"], "kernel and fallback disagree"
        speed = timings["python"] / timings["kernel"] if timings["kernel"] else float("inf")
        print(
            f"{name:24s} pairs={len(jobs):5d}  python={timings['python']*1e3:8.2f} ms  "
            f"kernel={timings['kernel']*1e3:8.2f} ms  speedup={speed:5.1f}x"
        )


if __name__ == "__main__":
    main()
