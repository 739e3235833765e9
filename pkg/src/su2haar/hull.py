"""Exact rational geometry of the support {(m_i, n_i)}.

All predicates run over Fractions; no floating point.  The convex hull of
finitely many rational points is closed, so "closed convex hull" membership
needs no extra care, and boundary points count as contained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import List, Optional, Sequence, Tuple

from .scalars import HalfInt

Point = Tuple[Fraction, Fraction]


class OriginInHullError(ValueError):
    """vanishing_threshold called with the origin inside the hull."""


@dataclass(frozen=True)
class SupportHull:
    """Deduplicated support points (m_i, n_i) and queries against their hull."""

    points: Tuple[Tuple[HalfInt, HalfInt], ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("a support hull needs at least one point")
        seen = set()
        kept = []
        for m, n in self.points:
            if not isinstance(m, HalfInt) or not isinstance(n, HalfInt):
                raise TypeError("support points must be HalfInt pairs")
            key = (m.twice, n.twice)
            if key not in seen:
                seen.add(key)
                kept.append((m, n))
        object.__setattr__(self, "points", tuple(kept))

    @staticmethod
    def of(*points) -> "SupportHull":
        return SupportHull(tuple((HalfInt(m), HalfInt(n)) for m, n in points))

    @staticmethod
    def from_function(f) -> "SupportHull":
        return SupportHull(tuple(f.support_points()))

    def fractions(self) -> List[Point]:
        return [(m.as_fraction(), n.as_fraction()) for m, n in self.points]


@dataclass(frozen=True)
class RankClass:
    """Exact rank of M = [[1,1,1],[m1,m2,m3],[n1,n2,n3]] over the rationals."""

    rank: int
    rows: Tuple[Tuple[Fraction, Fraction, Fraction], ...]


@dataclass(frozen=True)
class HullCertificate:
    """Rational witness for an origin-membership verdict.

    Inside: convex weights (one per stored point, summing to 1) hitting the
    origin.  Outside: a direction (u, v) with u*m + v*n >= bound > 0 on every
    support point.
    """

    inside: bool
    weights: Optional[Tuple[Fraction, ...]] = None
    separator: Optional[Tuple[Fraction, Fraction, Fraction]] = None


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _dot(a: Point, b: Point) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def convex_hull_ccw(points: Sequence[Point]) -> List[Point]:
    """Monotone chain over exact rationals; collinear interior points dropped.

    Returns hull vertices in counterclockwise order (1 or 2 points for
    degenerate inputs).
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    def half(iterable):
        chain: List[Point] = []
        for p in iterable:
            while len(chain) >= 2 and _cross(_sub(chain[-1], chain[-2]), _sub(p, chain[-2])) <= 0:
                chain.pop()
            chain.append(p)
        return chain
    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points collinear: keep the two extremes
        return [pts[0], pts[-1]]
    return hull


def _origin_weights(pts: List[Point]) -> Optional[List[Fraction]]:
    """Convex weights over pts hitting the origin, or None (Caratheodory search)."""
    k = len(pts)
    zero = Fraction(0)
    for i, p in enumerate(pts):
        if p == (0, 0):
            w = [zero] * k
            w[i] = Fraction(1)
            return w
    for i in range(k):
        for j in range(i + 1, k):
            a, b = pts[i], pts[j]
            if _cross(a, b) == 0 and _dot(a, b) <= 0:
                # origin on segment [a, b]; both endpoints nonzero here
                d = _sub(a, b)
                t = -b[0] / d[0] if d[0] else -b[1] / d[1]
                w = [zero] * k
                w[i] = t
                w[j] = 1 - t
                return w
    for i in range(k):
        for j in range(i + 1, k):
            for l in range(j + 1, k):
                a, b, c = pts[i], pts[j], pts[l]
                area = _cross(_sub(b, a), _sub(c, a))
                if area == 0:
                    continue
                d1, d2, d3 = _cross(b, c), _cross(c, a), _cross(a, b)
                if (d1 >= 0 and d2 >= 0 and d3 >= 0) or (d1 <= 0 and d2 <= 0 and d3 <= 0):
                    w = [zero] * k
                    w[i] = d1 / area
                    w[j] = d2 / area
                    w[l] = d3 / area
                    return w
    return None


def _separating_direction(pts: List[Point]) -> Tuple[Fraction, Fraction, Fraction]:
    """A direction (u, v) with min_i <(u,v), p_i> = bound > 0; assumes one exists."""
    candidates: List[Point] = list(pts)
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i == j:
                continue
            e = _sub(pts[j], pts[i])
            candidates.append((-e[1], e[0]))
            candidates.append((e[1], -e[0]))
    for d in candidates:
        if d == (0, 0):
            continue
        bound = min(_dot(d, p) for p in pts)
        if bound > 0:
            return (d[0], d[1], bound)
    raise RuntimeError("no separating direction found; origin should be inside")


def hull_certificate(h: SupportHull) -> HullCertificate:
    """Origin membership with a rational certificate either way."""
    pts = h.fractions()
    weights = _origin_weights(pts)
    if weights is not None:
        return HullCertificate(inside=True, weights=tuple(weights))
    return HullCertificate(inside=False, separator=_separating_direction(pts))


def origin_in_hull(h: SupportHull) -> bool:
    """True iff (0, 0) lies in the closed convex hull of the support points."""
    return _origin_weights(h.fractions()) is not None


def two_term_criterion(p1: Tuple[HalfInt, HalfInt], p2: Tuple[HalfInt, HalfInt]) -> bool:
    """Two-point vanishing criterion: zero determinant and nonpositive products.

    Equivalent to the origin lying on the segment from (m1, n1) to (m2, n2).
    The all-zero configuration is excluded by contract.
    """
    m1, n1 = p1[0].twice, p1[1].twice
    m2, n2 = p2[0].twice, p2[1].twice
    if m1 == n1 == m2 == n2 == 0:
        raise ValueError("two-point criterion needs at least one nonzero coordinate")
    return m1 * n2 - m2 * n1 == 0 and m1 * m2 <= 0 and n1 * n2 <= 0


def rank_classification(
    p1: Tuple[HalfInt, HalfInt], p2: Tuple[HalfInt, HalfInt], p3: Tuple[HalfInt, HalfInt]
) -> RankClass:
    """Exact rank of the 3x3 matrix [[1,1,1],[m-row],[n-row]]."""
    pts = [p1, p2, p3]
    ms = [p[0].as_fraction() for p in pts]
    ns = [p[1].as_fraction() for p in pts]
    rows = (
        (Fraction(1), Fraction(1), Fraction(1)),
        tuple(ms),
        tuple(ns),
    )
    det = (ms[1] - ms[0]) * (ns[2] - ns[0]) - (ms[2] - ms[0]) * (ns[1] - ns[0])
    if det != 0:
        return RankClass(3, rows)
    distinct = len({(m, n) for m, n in zip(ms, ns)})
    return RankClass(1 if distinct == 1 else 2, rows)


def _halfplanes(pts: List[Point]) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """C = {x : u*x1 + v*x2 <= c} constraints covering polygon/segment/point hulls."""
    hull = convex_hull_ccw(pts)
    cons: List[Tuple[Fraction, Fraction, Fraction]] = []
    if len(hull) == 1:
        (x, y) = hull[0]
        cons.append((Fraction(1), Fraction(0), x))
        cons.append((Fraction(-1), Fraction(0), -x))
        cons.append((Fraction(0), Fraction(1), y))
        cons.append((Fraction(0), Fraction(-1), -y))
        return cons
    if len(hull) == 2:
        a, b = hull
        e = _sub(b, a)
        n = (-e[1], e[0])
        cons.append((n[0], n[1], _dot(n, a)))
        cons.append((-n[0], -n[1], -_dot(n, a)))
        cons.append((e[0], e[1], max(_dot(e, a), _dot(e, b))))
        cons.append((-e[0], -e[1], -min(_dot(e, a), _dot(e, b))))
        return cons
    for a, b in zip(hull, hull[1:] + hull[:1]):
        e = _sub(b, a)
        n = (e[1], -e[0])           # outward normal for a ccw polygon
        cons.append((n[0], n[1], _dot(n, a)))
    return cons


def vanishing_threshold(h: SupportHull, witness: Tuple[HalfInt, HalfInt]) -> int:
    """Least P0 >= 1 with (-a/P, -b/P) outside the hull for every integer P >= P0.

    Requires the origin outside the hull, so {t > 0 : (-a/t, -b/t) in C} is a
    bounded closed interval (possibly empty) with rational endpoints; P0 is
    one more than the largest positive integer inside it, or 1.
    """
    if origin_in_hull(h):
        raise OriginInHullError("origin inside hull: no finite threshold guaranteed")
    a, b = witness[0].as_fraction(), witness[1].as_fraction()
    d = (-a, -b)
    if d == (0, 0):
        return 1
    u_lo: Optional[Fraction] = None
    u_hi: Optional[Fraction] = None
    for (nx, ny, c) in _halfplanes(h.fractions()):
        k = nx * d[0] + ny * d[1]
        if k == 0:
            if c < 0:
                return 1
        elif k > 0:
            bound = c / k
            u_hi = bound if u_hi is None else min(u_hi, bound)
        else:
            bound = c / k
            u_lo = bound if u_lo is None else max(u_lo, bound)
    # C is bounded, so the direction coefficient is positive somewhere
    assert u_hi is not None
    if u_hi <= 0 or (u_lo is not None and u_lo > u_hi):
        return 1
    if u_lo is None or u_lo <= 0:
        raise AssertionError("unbounded t-interval contradicts origin outside hull")
    t_lo = 1 / u_hi
    t_hi = 1 / u_lo
    p_star = floor(t_hi)
    if p_star < 1 or Fraction(p_star) < t_lo:
        return 1
    return p_star + 1
