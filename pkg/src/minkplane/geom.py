"""Points, segments, lines, and robust planar predicates.

Two scalar backends coexist behind one set of types:

* exact: ``int`` / ``fractions.Fraction`` coordinates, predicates decide signs
  with no rounding;
* approx: binary64 coordinates, predicates take an explicit absolute tolerance
  (default ``DEFAULT_TOL``) scaled to stay invariant under scaling and
  translation of the inputs.

Plain ints are valid in both backends.  A single predicate call must not mix
``Fraction`` coordinates with ``float`` ones; that raises
:class:`MixedBackendError`.  Plain point arithmetic (``a - b`` and friends) is
deliberately permissive so that exact and measured coordinates can be combined
when a caller wants a float result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

Scalar = Union[int, Fraction, float]

DEFAULT_TOL = 1e-9

EXACT = "exact"
APPROX = "approx"


class MixedBackendError(TypeError):
    """Fraction and float scalars were mixed in one predicate call."""


def is_exact_scalar(value: Scalar) -> bool:
    return isinstance(value, (int, Fraction))


def backend_of(*values: Scalar) -> str:
    """Return ``"exact"`` or ``"approx"`` for a family of scalars.

    Ints are polymorphic and count as whichever backend the other scalars
    pick; an all-int call is exact.
    """
    has_fraction = False
    has_float = False
    for v in values:
        if isinstance(v, float):
            has_float = True
        elif isinstance(v, Fraction):
            has_fraction = True
        elif not isinstance(v, int):
            raise TypeError(f"unsupported scalar {v!r}")
    if has_fraction and has_float:
        raise MixedBackendError(
            "exact (Fraction) and approximate (float) scalars in one call"
        )
    return APPROX if has_float else EXACT


@dataclass(frozen=True)
class Point2:
    """Immutable planar point / vector."""

    x: Scalar
    y: Scalar

    def __post_init__(self):
        backend_of(self.x, self.y)
        for v in (self.x, self.y):
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"non-finite coordinate {v!r}")

    @property
    def is_exact(self) -> bool:
        return not (isinstance(self.x, float) or isinstance(self.y, float))

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def __mul__(self, t: Scalar) -> "Point2":
        if not isinstance(t, (int, float, Fraction)):
            return NotImplemented
        return Point2(self.x * t, self.y * t)

    __rmul__ = __mul__

    def __truediv__(self, t: Scalar) -> "Point2":
        if isinstance(t, int) and self.is_exact:
            return Point2(Fraction(self.x, t), Fraction(self.y, t))
        return Point2(self.x / t, self.y / t)

    def dot(self, other: "Point2") -> Scalar:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> Scalar:
        return self.x * other.y - self.y * other.x

    def as_float(self) -> "Point2":
        return Point2(float(self.x), float(self.y))

    def as_exact(self) -> "Point2":
        return Point2(Fraction(self.x), Fraction(self.y))

    def __iter__(self):
        yield self.x
        yield self.y


ORIGIN = Point2(0, 0)


def _half(v: Scalar) -> Scalar:
    return v / 2 if isinstance(v, float) else Fraction(v, 2)


@dataclass(frozen=True)
class Segment:
    """Closed segment [p, q]; degenerate (p == q) is permitted."""

    p: Point2
    q: Point2

    @property
    def direction(self) -> Point2:
        return self.q - self.p

    @property
    def is_degenerate(self) -> bool:
        return self.p == self.q

    def canonical(self) -> "Segment":
        """Endpoints in lexicographic order, for order-insensitive compares."""
        if (self.q.x, self.q.y) < (self.p.x, self.p.y):
            return Segment(self.q, self.p)
        return self

    def midpoint(self) -> Point2:
        return Point2(_half(self.p.x + self.q.x), _half(self.p.y + self.q.y))


@dataclass(frozen=True)
class Line:
    """Line through two distinct points."""

    p: Point2
    q: Point2

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("a line needs two distinct points")

    def contains(self, c: Point2, tol: float = DEFAULT_TOL) -> bool:
        return orientation(self.p, self.q, c, tol) is Orientation.COLLINEAR


class Orientation(Enum):
    POSITIVE = 1
    COLLINEAR = 0
    NEGATIVE = -1


class HullLocation(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def _points_backend(*points: Point2) -> str:
    return backend_of(*(c for p in points for c in (p.x, p.y)))


def orientation(a: Point2, b: Point2, c: Point2, tol: float = DEFAULT_TOL) -> Orientation:
    """Sign of the cross product (b-a) x (c-a); POSITIVE is counterclockwise.

    Approx backend: collinear when |cross| <= tol * m**2 with m the largest
    displacement coordinate, which makes the verdict scale- and
    translation-invariant.
    """
    exact = _points_backend(a, b, c) == EXACT
    ux, uy = b.x - a.x, b.y - a.y
    vx, vy = c.x - a.x, c.y - a.y
    cross = ux * vy - uy * vx
    if not exact:
        m = max(abs(ux), abs(uy), abs(vx), abs(vy))
        if abs(cross) <= tol * m * m:
            return Orientation.COLLINEAR
    if cross > 0:
        return Orientation.POSITIVE
    if cross < 0:
        return Orientation.NEGATIVE
    return Orientation.COLLINEAR


def convex_hull(points: Sequence[Point2], tol: float = DEFAULT_TOL) -> list[Point2]:
    """Counterclockwise convex hull (monotone chain), collinear points dropped."""
    if not points:
        raise ValueError("empty point set")
    _points_backend(*points)
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) == 1:
        return pts

    def build(seq):
        chain: list[Point2] = []
        for p in seq:
            while len(chain) >= 2 and orientation(chain[-2], chain[-1], p, tol) is not Orientation.POSITIVE:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull if hull else [pts[0]]


def _within(lo: Scalar, hi: Scalar, v: Scalar, slack: Scalar) -> bool:
    if lo > hi:
        lo, hi = hi, lo
    return lo - slack <= v <= hi + slack


def _on_segment_collinear(seg: Segment, p: Point2, slack: Scalar) -> bool:
    """Bounding-box membership for a point already known collinear with seg."""
    return _within(seg.p.x, seg.q.x, p.x, slack) and _within(seg.p.y, seg.q.y, p.y, slack)


def in_convex_hull(p: Point2, hull_points: Sequence[Point2], tol: float = DEFAULT_TOL) -> HullLocation:
    """Locate p relative to the convex hull of the given points."""
    if not hull_points:
        raise ValueError("empty hull point list")
    exact = _points_backend(p, *hull_points) == EXACT
    hull = convex_hull(hull_points, tol)
    slack = 0 if exact else tol * max(
        1.0, *(abs(c) for q in (p, *hull) for c in (q.x, q.y))
    )
    if len(hull) == 1:
        a = hull[0]
        on = (p == a) if exact else (abs(p.x - a.x) <= slack and abs(p.y - a.y) <= slack)
        return HullLocation.BOUNDARY if on else HullLocation.EXTERIOR
    if len(hull) == 2:
        seg = Segment(hull[0], hull[1])
        if orientation(hull[0], hull[1], p, tol) is Orientation.COLLINEAR and _on_segment_collinear(seg, p, slack):
            return HullLocation.BOUNDARY
        return HullLocation.EXTERIOR
    on_boundary = False
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        o = orientation(a, b, p, tol)
        if o is Orientation.NEGATIVE:
            return HullLocation.EXTERIOR
        if o is Orientation.COLLINEAR and _on_segment_collinear(Segment(a, b), p, slack):
            on_boundary = True
    return HullLocation.BOUNDARY if on_boundary else HullLocation.INTERIOR


def _div(num: Scalar, den: Scalar, exact: bool) -> Scalar:
    return Fraction(num, den) if exact else num / den


def segment_intersection(
    s1: Segment, s2: Segment, tol: float = DEFAULT_TOL
) -> Optional[Union[Point2, Segment]]:
    """Intersection of two closed segments: None, a point, or an overlap segment.

    Exact backend classifies collinear overlaps exactly; the approx backend
    uses tol-scaled sign tests.  Symmetric in its arguments.
    """
    exact = _points_backend(s1.p, s1.q, s2.p, s2.q) == EXACT
    p, q = s1.p, s2.p
    r, s = s1.direction, s2.direction
    qp = q - p

    if exact:
        r_zero, s_zero = r == ORIGIN, s == ORIGIN
    else:
        m = max(1e-300, *(abs(c) for v in (r, s) for c in (v.x, v.y)))
        r_zero = max(abs(r.x), abs(r.y)) <= tol * m
        s_zero = max(abs(s.x), abs(s.y)) <= tol * m
    if r_zero and s_zero:
        same = (s1.p == s2.p) if exact else (
            max(abs(qp.x), abs(qp.y)) <= tol * max(1.0, abs(p.x), abs(p.y))
        )
        return s1.p if same else None
    if r_zero:
        return segment_intersection(s2, s1, tol)
    if s_zero:
        o = orientation(s1.p, s1.q, s2.p, tol)
        slack = 0 if exact else tol * max(1.0, abs(s2.p.x), abs(s2.p.y))
        if o is Orientation.COLLINEAR and _on_segment_collinear(s1, s2.p, slack):
            return s2.p
        return None

    denom = r.cross(s)
    if exact:
        parallel = denom == 0
    else:
        scale = max(abs(r.x), abs(r.y)) * max(abs(s.x), abs(s.y))
        parallel = abs(denom) <= tol * scale

    if not parallel:
        t = _div(qp.cross(s), denom, exact)
        u = _div(qp.cross(r), denom, exact)
        slack = 0 if exact else tol
        if -slack <= t <= 1 + slack and -slack <= u <= 1 + slack:
            return p + t * r
        return None

    # Parallel: distinct supporting lines never meet.
    offset = qp.cross(r)
    if exact:
        if offset != 0:
            return None
    else:
        m = max(abs(r.x), abs(r.y)) * max(1e-300, abs(qp.x), abs(qp.y), 1.0)
        if abs(offset) > tol * m:
            return None

    # Collinear: overlap interval in s1's parameter.
    rr = r.dot(r)
    t0 = _div(qp.dot(r), rr, exact)
    t1 = t0 + _div(s.dot(r), rr, exact)
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    lo = max(lo, 0)
    hi = min(hi, 1)
    slack = 0 if exact else tol
    if lo > hi + slack:
        return None
    if exact:
        if lo == hi:
            return p + lo * r
    elif hi - lo <= slack:
        return p + ((lo + hi) / 2) * r
    return Segment(p + lo * r, p + hi * r)
