"""Charge-redistribution certificates for saturated 2-plane drawings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arrangement import Arrangement, build
from .drawing import Drawing
from .geometry import format_rational
from .saturation import is_saturated
from .structure import NotTwoPlane, check_k_plane, check_l_simple, find_flags, find_special, special_cell_of_edge


def remove_empty_flags(d: Drawing, arr: Optional[Arrangement] = None) -> Drawing:
    """Delete leaves whose edge is uncrossed, repeatedly, smallest leaf id first.

    Deleting an uncrossed edge leaves every other crossing count unchanged, so
    the crossing counts of the input decide emptiness throughout.
    """
    arr = arr if arr is not None else build(d)
    cr = arr.cr
    while True:
        leaf = next(
            (v.id for v in d.vertices if d.degree(v.id) == 1 and cr[d.incidence[v.id][0]] == 0),
            None,
        )
        if leaf is None:
            return d
        d = d.without_vertices([leaf])


@dataclass
class ChargeReport:
    rule: str
    weight: Fraction
    preconditions: dict[str, bool]
    charges: dict[int, Fraction] = field(default_factory=dict)
    trace: dict[int, list[tuple[int, Fraction]]] = field(default_factory=dict)
    unassigned: dict[int, Fraction] = field(default_factory=dict)

    @property
    def preconditions_met(self) -> bool:
        return all(self.preconditions.values())

    @property
    def edgeless(self) -> bool:
        return not self.trace

    @property
    def min_charge(self) -> Optional[Fraction]:
        return min(self.charges.values()) if self.charges else None

    @property
    def total(self) -> Fraction:
        return sum(self.charges.values(), Fraction(0))

    @property
    def conserved(self) -> bool:
        """Charges plus unassigned remainders equal the total initial weight."""
        return self.total + sum(self.unassigned.values(), Fraction(0)) == self.weight * len(self.trace)

    @property
    def traces_consistent(self) -> bool:
        return all(
            sum((a for _, a in dist), Fraction(0)) + self.unassigned.get(e, Fraction(0)) == self.weight
            for e, dist in self.trace.items()
        )

    @property
    def certified(self) -> bool:
        """Every vertex got charge at least 1, or there is nothing to charge."""
        if not self.preconditions_met:
            return False
        if self.edgeless:
            return len(self.charges) <= 1
        return self.min_charge >= 1 and self.conserved

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "weight": format_rational(self.weight),
            "preconditions": dict(self.preconditions),
            "preconditions_met": self.preconditions_met,
            "charges": {str(v): format_rational(c) for v, c in sorted(self.charges.items())},
            "min_charge": None if self.min_charge is None else format_rational(self.min_charge),
            "conserved": self.conserved,
            "trace": {
                str(e): [[r, format_rational(a)] for r, a in dist] for e, dist in sorted(self.trace.items())
            },
            "unassigned": {str(e): format_rational(a) for e, a in sorted(self.unassigned.items()) if a},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _special_info(arr: Arrangement):
    """(special edges, special cell per special edge, isolated vertices per special cell)."""
    special = find_special(arr)
    cell_of = {}
    for e in special.special_edges:
        cells = special_cell_of_edge(arr, special, e)
        if cells:
            cell_of[e] = cells[0]
    iso = {f: arr.faces[f].isolated for f in special.special_cells}
    return special, cell_of, iso


def _common_preconditions(d: Drawing, arr: Arrangement, l: int, check_saturation: bool) -> dict[str, bool]:
    pre = {
        "two_plane": check_k_plane(arr, 2).ok,
        f"{l}_simple": check_l_simple(arr, l).ok,
    }
    if check_saturation:
        pre["saturated"] = pre["two_plane"] and pre[f"{l}_simple"] and is_saturated(d, 2, l, arr).saturated
    return pre


def thm1_charges(d: Drawing, arr: Optional[Arrangement] = None, check_saturation: bool = True) -> ChargeReport:
    """Weight 1 per edge on a simple saturated 2-plane drawing without flags.

    A non-special edge splits its weight evenly.  A special edge hands 1/2 to
    an endpoint of degree 2 and 1/3 to an endpoint of degree at least 3 and
    gives what is left to the isolated vertex in its special cell.
    """
    arr = arr if arr is not None else build(d)
    pre = _common_preconditions(d, arr, 1, check_saturation)
    flags = find_flags(d, arr)
    pre["no_empty_flags"] = not flags.empty
    pre["no_flags"] = not flags.flags
    report = ChargeReport("thm1", Fraction(1), pre)
    if not pre["two_plane"]:
        return report
    try:
        special, cell_of, iso = _special_info(arr)
    except NotTwoPlane:  # pragma: no cover - guarded by two_plane
        return report
    pre["one_isolated_vertex_per_special_cell"] = all(len(iso[f]) == 1 for f in special.special_cells)
    if not report.preconditions_met:
        return report

    charges = {v.id: Fraction(0) for v in d.vertices}
    special_edges = set(special.special_edges)
    half, third = Fraction(1, 2), Fraction(1, 3)
    for e in d.edges:
        dist = []
        if e.id not in special_edges:
            dist = [(e.tail, half), (e.head, half)]
        else:
            for w in (e.tail, e.head):
                dist.append((w, half if d.degree(w) == 2 else third))
            rest = report.weight - sum(a for _, a in dist)
            dist.append((iso[cell_of[e.id]][0], rest))
        for w, a in dist:
            charges[w] += a
        report.trace[e.id] = dist
    report.charges = charges
    return report


def thm2_charges(d: Drawing, l: int, arr: Optional[Arrangement] = None, check_saturation: bool = True) -> ChargeReport:
    """Weight 3/2 per edge; each endpoint w receives 1/d(w).

    The rest of a special edge goes to the isolated vertex of its special
    cell; the rest of any other edge stays unassigned.  Charges are reported
    without a lower-bound assertion.
    """
    if l not in (2, 3):
        raise ValueError("the 3/2 rule is stated for l = 2 or l = 3")
    arr = arr if arr is not None else build(d)
    pre = _common_preconditions(d, arr, l, check_saturation)
    report = ChargeReport("thm2", Fraction(3, 2), pre)
    if not pre["two_plane"]:
        return report
    special, cell_of, iso = _special_info(arr)
    pre["isolated_vertex_in_each_special_cell"] = all(len(iso[f]) >= 1 for f in special.special_cells)
    if not report.preconditions_met:
        return report

    charges = {v.id: Fraction(0) for v in d.vertices}
    special_edges = set(special.special_edges)
    for e in d.edges:
        dist = [(w, Fraction(1, d.degree(w))) for w in (e.tail, e.head)]
        rest = report.weight - sum(a for _, a in dist)
        if e.id in special_edges:
            dist.append((iso[cell_of[e.id]][0], rest))
        else:
            report.unassigned[e.id] = rest
        for w, a in dist:
            charges[w] += a
        report.trace[e.id] = dist
    report.charges = charges
    return report
