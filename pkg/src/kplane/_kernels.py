"""Integer corridor-search kernel.

The kernel runs as numba-compiled code unless the environment variable
``KPLANE_DISABLE_NUMBA`` is set to a non-empty value other than ``0``, in
which case the identical source runs as plain Python over numpy arrays.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("KPLANE_DISABLE_NUMBA", "") not in ("", "0")

try:  # pragma: no cover - depends on the environment
    if _DISABLED:
        raise ImportError
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def corridor_search_py(face_ptr, face_arc, face_nb, arc_edge, cap, starts, goal, kmax, out_faces, out_arcs):
    """Depth-limited search for a face sequence from a start face to a goal face.

    Tries crossing counts 0..kmax in turn; within one count, start faces in the
    given order and, per face, its (arc, neighbour) entries in table order.
    Each crossed arc charges its parent edge, which may be charged at most
    ``cap[edge]`` times.  Returns the crossing count of the first hit (the
    path sits in ``out_faces[:c+1]`` / ``out_arcs[:c]``) or -1.
    """
    used = np.zeros(cap.shape[0], np.int64)
    it = np.zeros(kmax + 1, np.int64)
    for c in range(kmax + 1):
        for si in range(starts.shape[0]):
            f0 = starts[si]
            out_faces[0] = f0
            if c == 0:
                if goal[f0]:
                    return 0
                continue
            depth = 0
            it[0] = face_ptr[f0]
            while depth >= 0:
                f = out_faces[depth]
                j = it[depth]
                if j >= face_ptr[f + 1]:
                    depth -= 1
                    if depth >= 0:
                        used[arc_edge[out_arcs[depth]]] -= 1
                    continue
                it[depth] = j + 1
                a = face_arc[j]
                e = arc_edge[a]
                if used[e] >= cap[e]:
                    continue
                used[e] += 1
                out_arcs[depth] = a
                g = face_nb[j]
                out_faces[depth + 1] = g
                if depth + 1 == c:
                    if goal[g]:
                        return c
                    used[e] -= 1
                    continue
                depth += 1
                it[depth] = face_ptr[g]
    return -1


corridor_search = njit(cache=True)(corridor_search_py) if NUMBA_ENABLED else corridor_search_py
