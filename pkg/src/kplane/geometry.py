"""Exact planar geometry on rational coordinates.

Every predicate here works on :class:`fractions.Fraction` values, so no
decision ever depends on rounding.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or rational string ("-3", "7/2") to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not a rational string: {value!r}")
        result = Fraction(text)
        return result
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def format_rational(value: Fraction) -> str:
    return str(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def pt(x: RationalLike, y: RationalLike) -> Point:
    return Point(to_rational(x), to_rational(y))


class Segment(NamedTuple):
    a: Point
    b: Point


def seg(a: Point, b: Point) -> Segment:
    if a == b:
        raise ValueError("degenerate segment")
    return Segment(a, b)


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of triangle oab."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orient(p: Point, q: Point, r: Point) -> int:
    """+1 for a left turn p->q->r, -1 for a right turn, 0 if collinear."""
    # Same sign as cross(p, q, r), evaluated on integer numerators and
    # (positive) denominators so no gcd reduction happens on the way.
    pxn, pxd = p.x.numerator, p.x.denominator
    pyn, pyd = p.y.numerator, p.y.denominator
    qxn, qxd = q.x.numerator, q.x.denominator
    qyn, qyd = q.y.numerator, q.y.denominator
    rxn, rxd = r.x.numerator, r.x.denominator
    ryn, ryd = r.y.numerator, r.y.denominator
    if pxd == pyd == qxd == qyd == rxd == ryd == 1:
        d = (qxn - pxn) * (ryn - pyn) - (qyn - pyn) * (rxn - pxn)
    else:
        n1, d1 = qxn * pxd - pxn * qxd, qxd * pxd
        n2, d2 = ryn * pyd - pyn * ryd, ryd * pyd
        n3, d3 = qyn * pyd - pyn * qyd, qyd * pyd
        n4, d4 = rxn * pxd - pxn * rxd, rxd * pxd
        d = n1 * n2 * d3 * d4 - n3 * n4 * d1 * d2
    return (d > 0) - (d < 0)


def on_segment(p: Point, s: Segment) -> bool:
    """True if p lies on the closed segment s."""
    a, b = s
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


# -- intersection classification ---------------------------------------------


@dataclass(frozen=True)
class Disjoint:
    pass


@dataclass(frozen=True)
class ProperCrossing:
    point: Point


@dataclass(frozen=True)
class SharedEndpoint:
    point: Point


@dataclass(frozen=True)
class Touch:
    point: Point


@dataclass(frozen=True)
class Overlap:
    pass


IntersectionKind = Union[Disjoint, ProperCrossing, SharedEndpoint, Touch, Overlap]

DISJOINT = Disjoint()
OVERLAP = Overlap()


def boxes_overlap(s: Segment, t: Segment) -> bool:
    (a, b), (c, d) = s, t
    return not (
        max(a.x, b.x) < min(c.x, d.x)
        or max(c.x, d.x) < min(a.x, b.x)
        or max(a.y, b.y) < min(c.y, d.y)
        or max(c.y, d.y) < min(a.y, b.y)
    )


def crossing_parameter(s: Segment, t: Segment) -> Fraction:
    """Parameter along s of the intersection of the (non-parallel) lines s and t."""
    (a, b), (c, d) = s, t
    den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
    num = (c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)
    return num / den


def intersect_segments(s: Segment, t: Segment) -> IntersectionKind:
    """Classify how two closed segments meet."""
    if not boxes_overlap(s, t):
        return DISJOINT
    (a, b), (c, d) = s, t
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)

    if o1 == o2 == o3 == o4 == 0:
        return _collinear_case(s, t)

    if o1 * o2 < 0 and o3 * o4 < 0:
        return ProperCrossing(lerp(a, b, crossing_parameter(s, t)))

    ends_s = (a, b)
    ends_t = (c, d)
    for p in (c, d):
        if on_segment(p, s):
            return SharedEndpoint(p) if p in ends_s else Touch(p)
    for p in (a, b):
        if on_segment(p, t):
            return SharedEndpoint(p) if p in ends_t else Touch(p)
    return DISJOINT


def _collinear_case(s: Segment, t: Segment) -> IntersectionKind:
    (a, b), (c, d) = s, t
    # project on the dominant axis
    if a.x != b.x:
        key = lambda p: p.x  # noqa: E731
    else:
        key = lambda p: p.y  # noqa: E731
    s_lo, s_hi = sorted((a, b), key=key)
    t_lo, t_hi = sorted((c, d), key=key)
    lo = max(key(s_lo), key(t_lo))
    hi = min(key(s_hi), key(t_hi))
    if lo < hi:
        return OVERLAP
    if lo > hi:
        return DISJOINT
    # a single common point on a shared line is an endpoint of both segments
    p = next(q for q in (a, b) if key(q) == lo)
    return SharedEndpoint(p)


# -- angular order ------------------------------------------------------------


def direction_half(dx: Fraction, dy: Fraction) -> int:
    """0 for directions in [0, pi), 1 for [pi, 2pi)."""
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def compare_directions(u: tuple[Fraction, Fraction], v: tuple[Fraction, Fraction]) -> int:
    """Counter-clockwise angle comparison of two nonzero vectors, from the +x axis."""
    hu, hv = direction_half(*u), direction_half(*v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


# -- misc ---------------------------------------------------------------------


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator strictly inside (lo, hi)."""
    if not lo < hi:
        raise ValueError("empty interval")
    n = math.floor(lo)
    if n + 1 < hi:
        # prefer the integer closest to the middle of the run of integers
        first, last = n + 1, math.ceil(hi) - 1
        if first <= 0 <= last:
            return Fraction(0)
        return Fraction(first if abs(first) <= abs(last) else last)
    a, b = lo - n, hi - n
    if a == 0:
        inner = Fraction(math.floor(1 / b) + 1)
    else:
        inner = simplest_between(1 / b, 1 / a)
    return n + 1 / inner


def polygon_area2(points: list[Point]) -> Fraction:
    """Twice the signed shoelace area of a closed point sequence."""
    total = Fraction(0)
    m = len(points)
    for i in range(m):
        p, q = points[i], points[(i + 1) % m]
        total += p.x * q.y - q.x * p.y
    return total
