import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minkplane.geom import (
    HullLocation,
    Line,
    MixedBackendError,
    Orientation,
    Point2,
    Segment,
    convex_hull,
    in_convex_hull,
    orientation,
    segment_intersection,
)

ints = st.integers(min_value=-50, max_value=50)
exact_points = st.builds(Point2, ints, ints)
floats = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
float_points = st.builds(Point2, floats, floats)


class TestPoint2:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            Point2(float("nan"), 0.0)
        with pytest.raises(ValueError):
            Point2(0.0, float("inf"))

    def test_rejects_mixed_lanes_in_one_point(self):
        with pytest.raises(MixedBackendError):
            Point2(Fraction(1, 2), 0.25)

    def test_arithmetic(self):
        p = Point2(Fraction(1, 2), 3)
        q = Point2(1, -1)
        assert p + q == Point2(Fraction(3, 2), 2)
        assert 2 * (p - q) == Point2(-1, 8)
        assert p.cross(q) == Fraction(-7, 2)
        assert p.dot(q) == Fraction(-5, 2)


class TestOrientation:
    def test_counterclockwise(self):
        assert orientation(Point2(0, 0), Point2(1, 0), Point2(0, 1)) is Orientation.POSITIVE

    def test_collinear(self):
        assert orientation(Point2(0, 0), Point2(1, 0), Point2(2, 0)) is Orientation.COLLINEAR

    def test_clockwise(self):
        assert orientation(Point2(0, 0), Point2(0, 1), Point2(1, 0)) is Orientation.NEGATIVE

    def test_mixed_backends_rejected(self):
        with pytest.raises(MixedBackendError):
            orientation(Point2(Fraction(1), 0), Point2(1.0, 0.0), Point2(0, 1))

    @given(exact_points, exact_points, exact_points)
    def test_antisymmetric_under_swaps(self, a, b, c):
        o = orientation(a, b, c)
        flipped = {
            Orientation.POSITIVE: Orientation.NEGATIVE,
            Orientation.NEGATIVE: Orientation.POSITIVE,
            Orientation.COLLINEAR: Orientation.COLLINEAR,
        }[o]
        assert orientation(b, a, c) is flipped
        assert orientation(a, c, b) is flipped
        assert orientation(c, b, a) is flipped

    @given(exact_points, exact_points, st.fractions(min_value=-3, max_value=3))
    def test_collinear_iff_on_line(self, a, b, t):
        if a == b:
            return
        on_line = a + t * (b - a)
        assert orientation(a, b, on_line) is Orientation.COLLINEAR
        assert Line(a, b).contains(on_line)
        off_line = on_line + Point2(-(b - a).y, (b - a).x)
        assert orientation(a, b, off_line) is not Orientation.COLLINEAR

    def test_approx_scale_invariance(self):
        a, b, c = Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.5, 1e-12)
        assert orientation(a, b, c) is Orientation.COLLINEAR
        big = 1e6
        assert orientation(big * a, big * b, big * c) is Orientation.COLLINEAR


class TestConvexHull:
    def test_trivial_triangle(self):
        tri = [Point2(0, 0), Point2(1, 0), Point2(0, 1)]
        assert in_convex_hull(Point2(0.1, 0.1), [p.as_float() for p in tri]) is HullLocation.INTERIOR
        assert in_convex_hull(Point2(Fraction(1, 2), 0), tri) is HullLocation.BOUNDARY
        assert in_convex_hull(Point2(2, 2), tri) is HullLocation.EXTERIOR

    def test_vertex_is_boundary(self):
        tri = [Point2(0, 0), Point2(1, 0), Point2(0, 1)]
        assert in_convex_hull(Point2(0, 0), tri) is HullLocation.BOUNDARY

    def test_degenerate_hulls(self):
        assert in_convex_hull(Point2(0, 0), [Point2(0, 0)]) is HullLocation.BOUNDARY
        assert in_convex_hull(Point2(1, 0), [Point2(0, 0)]) is HullLocation.EXTERIOR
        seg = [Point2(0, 0), Point2(2, 0)]
        assert in_convex_hull(Point2(1, 0), seg) is HullLocation.BOUNDARY
        assert in_convex_hull(Point2(1, 1), seg) is HullLocation.EXTERIOR

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            in_convex_hull(Point2(0, 0), [])

    @given(st.lists(exact_points, min_size=1, max_size=8))
    def test_hull_contains_inputs(self, pts):
        hull = convex_hull(pts)
        for p in pts:
            assert in_convex_hull(p, hull) is not HullLocation.EXTERIOR


class TestSegmentIntersection:
    def test_proper_crossing(self):
        r = segment_intersection(
            Segment(Point2(0, 0), Point2(1, 1)), Segment(Point2(0, 1), Point2(1, 0))
        )
        assert r == Point2(Fraction(1, 2), Fraction(1, 2))

    def test_collinear_overlap(self):
        r = segment_intersection(
            Segment(Point2(0, 0), Point2(2, 0)), Segment(Point2(1, 0), Point2(3, 0))
        )
        assert isinstance(r, Segment)
        assert r.canonical() == Segment(Point2(1, 0), Point2(2, 0)).canonical()

    def test_parallel_disjoint(self):
        assert segment_intersection(
            Segment(Point2(0, 0), Point2(1, 0)), Segment(Point2(0, 1), Point2(1, 1))
        ) is None

    def test_collinear_touching_gives_point(self):
        r = segment_intersection(
            Segment(Point2(0, 0), Point2(1, 0)), Segment(Point2(1, 0), Point2(2, 0))
        )
        assert r == Point2(1, 0)

    def test_degenerate_segments(self):
        pt = Segment(Point2(1, 1), Point2(1, 1))
        assert segment_intersection(pt, pt) == Point2(1, 1)
        assert segment_intersection(pt, Segment(Point2(0, 0), Point2(2, 2))) == Point2(1, 1)
        assert segment_intersection(pt, Segment(Point2(0, 0), Point2(1, 0))) is None

    @given(exact_points, exact_points, exact_points, exact_points)
    def test_symmetric(self, a, b, c, d):
        s1, s2 = Segment(a, b), Segment(c, d)
        r1 = segment_intersection(s1, s2)
        r2 = segment_intersection(s2, s1)
        if isinstance(r1, Segment):
            assert isinstance(r2, Segment)
            assert r1.canonical() == r2.canonical()
        else:
            assert r1 == r2

    @given(exact_points, exact_points, exact_points, exact_points)
    def test_reported_point_lies_on_both(self, a, b, c, d):
        r = segment_intersection(Segment(a, b), Segment(c, d))
        if isinstance(r, Point2):
            for s in (Segment(a, b), Segment(c, d)):
                if s.is_degenerate:
                    assert r == s.p
                else:
                    assert orientation(s.p, s.q, r) is Orientation.COLLINEAR

    def test_approx_lane(self):
        r = segment_intersection(
            Segment(Point2(0.0, 0.0), Point2(1.0, 1.0)),
            Segment(Point2(0.0, 1.0), Point2(1.0, 0.0)),
        )
        assert isinstance(r, Point2)
        assert math.isclose(r.x, 0.5) and math.isclose(r.y, 0.5)
