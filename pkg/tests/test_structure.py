import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import P, random_drawing, triangle, x_drawing
from kplane.arrangement import build
from kplane.constructions import complete_drawing, disjoint_union, family_2simple, family_3simple, propeller
from kplane.drawing import make_drawing
from kplane.structure import (
    NotTwoPlane,
    analyze,
    check_claim1,
    check_claim3,
    check_claim4,
    check_k_plane,
    check_l_simple,
    essential_components,
    find_flags,
    find_special,
    two_propeller_edges,
)


def test_k_plane():
    assert check_k_plane(build(triangle()), 0).ok
    res = check_k_plane(build(x_drawing()), 0)
    assert not res.ok and res.witness[0] in (0, 1)
    assert check_k_plane(build(propeller(4)), 2).ok
    with pytest.raises(ValueError):
        check_k_plane(build(triangle()), -1)


def test_l_simple():
    assert check_l_simple(build(triangle()), 1).ok
    p3, p2 = build(propeller(3)), build(propeller(2))
    assert not check_l_simple(p3, 1).ok and check_l_simple(p3, 2).ok
    bad = check_l_simple(p2, 2)
    assert not bad.ok and bad.witness == (0, 1)
    assert check_l_simple(p2, 3).ok
    with pytest.raises(ValueError):
        check_l_simple(p2, 0)


def test_flags():
    k2 = complete_drawing(2)
    fl = find_flags(k2, build(k2))
    assert fl.flags == [(0, 0), (1, 0)] and fl.empty == fl.flags
    p3 = propeller(3)
    fl = find_flags(p3, build(p3))
    assert len(fl.flags) == 3 and fl.empty == []
    assert find_flags(triangle(), build(triangle())).flags == []


def test_special_cells_of_propellers():
    for m in (2, 3):
        sp = find_special(build(propeller(m)))
        assert 0 in sp.special_cells
        assert sp.special_edges == list(range(m))
    assert find_special(build(triangle())).special_cells == []


def test_propeller3_central_region_is_not_special():
    # the sectors around the hub carry the hub (a non-isolated vertex) on their boundary
    arr = build(propeller(3))
    sp = find_special(arr)
    for x, y in ((100, 7), (-50, 60), (-50, -60)):
        f = arr.locate(P(x, y))
        assert not f.is_unbounded and 0 in f.vertices
        assert f.id not in sp.special_cells
    assert sp.special_cells == [0]


def test_special_needs_two_plane():
    # one horizontal edge crossed by three vertical ones
    pts = [(0, 5), (10, 5), (2, 0), (2, 10), (5, 0), (5, 10), (8, 0), (8, 10)]
    d = make_drawing(pts, [(0, 1), (2, 3), (4, 5), (6, 7)])
    with pytest.raises(NotTwoPlane):
        find_special(build(d))
    assert analyze(d).special_cells is None


def test_claim1_on_constructions():
    assert check_claim1(build(propeller(3))).ok
    assert check_claim1(build(triangle())).ok
    for n in range(1, 25):
        assert check_claim1(build(family_2simple(n))).ok
        assert check_claim1(build(family_3simple(n))).ok


def test_claim3_on_three_simple_family():
    for n in range(1, 16):
        d = family_3simple(n)
        arr = build(d)
        if find_flags(d, arr).empty:
            continue
        assert check_claim3(d, arr).ok


def test_two_propeller_recognized():
    arr = build(propeller(2))
    assert two_propeller_edges(arr) == [(0, 0, 1)]
    assert two_propeller_edges(build(propeller(3))) == []


def test_essential_components():
    two = disjoint_union([propeller(3), propeller(3)])
    ess = essential_components(two, build(two))
    assert len(ess.components) == 2 and ess.order == []

    outer = [(0, 0), (100, 0), (0, 100)]
    inner = [(10, 10), (20, 10)]
    nested = make_drawing(outer + inner, [(0, 1), (1, 2), (0, 2), (3, 4)])
    ess = essential_components(nested, build(nested))
    assert ess.components == [[0, 1, 2], [3, 4]]
    assert ess.order == [(1, 0)]

    k2 = complete_drawing(2)
    assert essential_components(k2, build(k2)).components == [[0, 1]]


def test_claim4_on_saturated_unions():
    for n in (8, 9, 11, 12):
        d = family_2simple(n)
        assert check_claim4(d, build(d)).ok
        d = family_3simple(n)
        assert check_claim4(d, build(d)).ok


def test_claim4_detects_two_plain_triangles():
    d = disjoint_union([complete_drawing(3), complete_drawing(3)])
    res = check_claim4(d, build(d))
    assert not res.ok


def test_analyze_report_fields():
    rep = analyze(propeller(3), 2, 2)
    data = json.loads(rep.to_json())
    assert data["is_k_plane"] and data["is_l_simple"]
    assert len(data["flags"]) == 3 and data["special_cells"] == [0]
    assert data["middle_segments"] == sorted(data["middle_segments"]) and len(data["middle_segments"]) == 3
    assert data["empty_flags"] == []
    assert data["crossings_per_edge"] == {"0": 2, "1": 2, "2": 2}


@given(st.integers(0, 10**6), st.integers(2, 8), st.integers(1, 8))
def test_special_characterizations_agree(seed, n, m):
    d = random_drawing(random.Random(seed), n, m)
    arr = build(d)
    if any(c > 2 for c in arr.cr.values()):
        return
    sp = find_special(arr)  # raises if the two characterizations disagree
    middles = set(sp.middle_segments)
    for f in sp.special_cells:
        assert all(a in middles for a in arr.faces[f].arcs)
    for e in sp.special_edges:
        assert arr.cr[e] == 2
