import json
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import P, brute_crossings, brute_pair_crossings, random_drawing, skeleton_components, triangle, x_drawing
from kplane.arrangement import PointOnSkeleton, UNBOUNDED, build, common_points, crossings_per_edge, interior_point, locate
from kplane.constructions import family_2simple, family_3simple, propeller
from kplane.drawing import DrawingError, make_drawing
from kplane.structure import find_special


def _euler_faces(d, n_nodes, n_arcs):
    """Face count forced by Euler's formula with an independently counted C."""
    return 1 + skeleton_components(d) - n_nodes + n_arcs


def test_x_drawing_counts():
    arr = build(x_drawing())
    assert (len(arr.nodes), len(arr.arcs), len(arr.faces)) == (5, 4, 1)
    assert crossings_per_edge(arr) == {0: 1, 1: 1}
    assert common_points(arr, 0, 1) == 1


def test_triangle_counts():
    arr = build(triangle())
    assert (len(arr.nodes), len(arr.arcs), len(arr.faces)) == (3, 3, 2)
    assert set(crossings_per_edge(arr).values()) == {0}
    assert common_points(arr, 0, 1) == 1


def test_propeller3_counts():
    d = propeller(3)
    arr = build(d)
    assert (len(arr.nodes), len(arr.arcs)) == (7, 9)
    assert len(arr.faces) == _euler_faces(d, 7, 9) == 4
    assert set(crossings_per_edge(arr).values()) == {2}


def test_propeller2_pair_has_three_common_points():
    arr = build(propeller(2))
    assert common_points(arr, 0, 1) == 3


def test_common_points_errors():
    arr = build(triangle())
    with pytest.raises(KeyError):
        common_points(arr, 0, 9)
    with pytest.raises(ValueError):
        common_points(arr, 1, 1)


def test_build_rejects_invalid():
    with pytest.raises(DrawingError):
        build(make_drawing([(0, 0), (4, 0), (2, 0)], [(0, 1)]))


def test_locate_triangle():
    arr = build(triangle())
    assert locate(arr, P(100, 100)).id == UNBOUNDED
    bary = locate(arr, P(Fraction(4, 3), Fraction(4, 3)))
    assert not bary.is_unbounded
    with pytest.raises(PointOnSkeleton):
        locate(arr, P(2, 0))
    with pytest.raises(PointOnSkeleton):
        locate(arr, P(0, 0))


def test_interior_points():
    arr = build(triangle())
    outside = interior_point(arr, UNBOUNDED)
    assert outside.x > 4 and outside.y > 4
    for f in arr.faces:
        assert locate(arr, interior_point(arr, f)).id == f.id


def test_special_cells_of_family3_round_trip():
    arr = build(family_3simple(9))
    special = find_special(arr).special_cells
    assert special
    for f in special:
        assert locate(arr, interior_point(arr, f)).id == f


def test_isolated_vertices_counted_as_components():
    d = make_drawing([(0, 0), (4, 0), (0, 4), (1, 1), (10, 10)], [(0, 1), (1, 2), (0, 2)])
    arr = build(d)
    assert arr.n_components == 3
    assert len(arr.faces) == 2
    inner = arr.isolated_face[3]
    assert locate(arr, P(1, 2)).id == inner
    assert arr.faces[inner].isolated == (3,)
    assert arr.faces[UNBOUNDED].isolated == (4,)


def test_nested_components_faces():
    outer = [(0, 0), (20, 0), (0, 20)]
    inner = [(2, 2), (6, 2), (2, 6)]
    d = make_drawing(outer + inner, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    arr = build(d)
    assert len(arr.faces) == 3
    ring = locate(arr, P(10, 1)).id
    assert set(arr.faces[ring].vertices) == set(range(6))


def _check_invariants(d):
    arr = build(d)
    n_cross = sum(1 for n in arr.nodes if n.kind == "crossing")
    assert sum(arr.cr.values()) == 2 * n_cross
    assert Counter(arr.cr) == brute_crossings(d)
    for pair, c in arr.pair_crossings.items():
        e, f = sorted(pair)
        assert c == brute_pair_crossings(d, e, f)
    uses = Counter(h >> 1 for f in arr.faces for w in f.walks for h in w)
    assert all(uses[a.id] == 2 for a in arr.arcs)
    assert len(arr.faces) == _euler_faces(d, len(arr.nodes), len(arr.arcs))
    assert sum(f.is_unbounded for f in arr.faces) == 1
    for f in arr.faces:
        assert locate(arr, interior_point(arr, f)).id == f.id
    for a in arr.arcs:
        assert len([x for x in arr.edge_arcs[a.edge]]) == arr.cr[a.edge] + 1


@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(0, 8))
def test_random_drawings_invariants(seed, n, m):
    _check_invariants(random_drawing(random.Random(seed), n, m))


@pytest.mark.parametrize("m", range(2, 9))
def test_propeller_invariants(m):
    _check_invariants(propeller(m))


def test_family_invariants():
    for n in (5, 9, 11, 14):
        _check_invariants(family_2simple(n))
        _check_invariants(family_3simple(n))


def test_dump_is_json():
    data = json.loads(build(propeller(3)).dump())
    assert data["counts"] == {"nodes": 7, "arcs": 9, "faces": 4, "components": 1}
    assert {a["index"] for a in data["arcs"]} == {0, 1, 2}
