import math
from fractions import Fraction

import pytest

from minkplane.circles import intersect_circles
from minkplane.classify import (
    Verdict,
    classify,
    counterexample_pair,
    sampling_check,
)
from minkplane.geom import Point2, Segment
from minkplane.norms import (
    CustomGaugeNorm,
    PNorm,
    SphereSegment,
    diamond_norm,
    hexagon_norm,
    octagon_norm,
    square_norm,
)


class TestClassifyCorpus:
    @pytest.mark.parametrize(
        "make,expected",
        [
            (diamond_norm, Verdict.NOT_URTC),
            (square_norm, Verdict.NOT_URTC),
            (hexagon_norm, Verdict.URTC),
            (octagon_norm, Verdict.URTC),
        ],
    )
    def test_polygon_corpus(self, make, expected):
        verdict = classify(make())
        assert verdict.verdict is expected
        assert verdict.exact and verdict.method == "segment-criterion"
        if expected is Verdict.NOT_URTC:
            assert verdict.witness is not None
            assert verdict.witness.endpoint_gauge_distance > 1
        else:
            assert verdict.witness is None

    def test_strictly_convex_pnorms(self):
        for p in (1.5, 2, 3, 7.5):
            assert classify(PNorm(p)).verdict is Verdict.URTC

    def test_l1_pnorm(self):
        verdict = classify(PNorm(1))
        assert verdict.verdict is Verdict.NOT_URTC
        assert verdict.witness.endpoint_gauge_distance == 2.0

    def test_hexagon_boundary_is_decided_by_strict_inequality(self):
        # Every hexagon edge has endpoint distance exactly 1: not > 1.
        segs = hexagon_norm().sphere_segments()
        assert all(s.endpoint_gauge_distance == 1 for s in segs)
        assert classify(hexagon_norm()).verdict is Verdict.URTC

    def test_verdict_cached(self):
        norm = octagon_norm()
        assert classify(norm) is classify(norm)


class TestCounterexamplePair:
    def test_square_spec_edge(self):
        witness = SphereSegment(Segment(Point2(1, -1), Point2(1, 1)), 2)
        a, b = counterexample_pair(square_norm(), witness)
        assert a == Point2(0, 0) and b == Point2(0, 1)

    def test_diamond_edge(self):
        witness = SphereSegment(Segment(Point2(1, 0), Point2(0, 1)), 2)
        a, b = counterexample_pair(diamond_norm(), witness)
        assert b == Point2(Fraction(-1, 2), Fraction(1, 2))

    @pytest.mark.parametrize("make", [square_norm, diamond_norm])
    def test_yields_nondegenerate_segment_exactly(self, make):
        norm = make()
        verdict = classify(norm)
        a, b = counterexample_pair(norm, verdict.witness)
        assert norm.gauge(b - a) == 1
        sol = intersect_circles(norm, a, 1, b, 1)
        assert sol.exact
        assert any(not s.is_degenerate for s in sol.segments)

    def test_distance_one_witness_rejected(self):
        hexn = hexagon_norm()
        with pytest.raises(ValueError):
            counterexample_pair(hexn, hexn.sphere_segments()[0])

    @pytest.mark.parametrize("make", [square_norm, diamond_norm])
    def test_witness_interior_points_have_gauge_one(self, make):
        norm = make()
        witness = classify(norm).witness
        seg = witness.seg
        for k in range(1, 16):
            x = seg.p + Fraction(k, 16) * (seg.q - seg.p)
            assert norm.gauge(x) == 1


class TestSamplingCheck:
    def test_euclidean_clean(self):
        rep = sampling_check(PNorm(2), 100, seed=7)
        assert rep.max_solution_count == 2
        assert not rep.found_segment
        assert rep.pairs_checked == 100

    def test_square_with_injected_counterexample(self):
        sq = square_norm()
        pair = counterexample_pair(sq, classify(sq).witness)
        rep = sampling_check(sq, 25, seed=7, extra_pairs=[pair])
        assert rep.found_segment
        assert rep.pairs_checked == 26

    def test_zero_pairs_rejected(self):
        with pytest.raises(ValueError):
            sampling_check(PNorm(2), 0, seed=1)

    def test_deterministic_for_fixed_seed(self):
        a = sampling_check(PNorm(1.5), 40, seed=3)
        b = sampling_check(PNorm(1.5), 40, seed=3)
        assert a == b

    def test_polygon_pairs_are_exact_unit_distance(self):
        # The polygonal sampler draws rational boundary points, so the
        # sampled pairs satisfy ||a - b|| = 1 exactly and the URTC count
        # applies verbatim.
        hexn = hexagon_norm()
        rep = sampling_check(hexn, 150, seed=5)
        assert rep.max_solution_count == 2
        assert not rep.found_segment

    def test_agreement_with_classifier(self):
        for make in (diamond_norm, square_norm, hexagon_norm, octagon_norm):
            norm = make()
            verdict = classify(norm)
            extra = []
            if verdict.verdict is Verdict.NOT_URTC:
                extra.append(counterexample_pair(norm, verdict.witness))
            rep = sampling_check(norm, 60, seed=13, extra_pairs=extra)
            clean = rep.max_solution_count <= 2 and not rep.found_segment
            assert clean == (verdict.verdict is Verdict.URTC)


class TestCustomGaugeVerdicts:
    def test_circle_urtc(self):
        norm = CustomGaugeNorm(lambda t: (math.cos(t), math.sin(t)), n=4096)
        verdict = classify(norm)
        assert verdict.verdict is Verdict.URTC
        assert not verdict.exact and verdict.tolerance > 0

    def test_square_not_urtc(self):
        def sampler(t):
            c, s = math.cos(t), math.sin(t)
            g = max(abs(c), abs(s))
            return (c / g, s / g)

        verdict = classify(CustomGaugeNorm(sampler, n=4096))
        assert verdict.verdict is Verdict.NOT_URTC
        assert verdict.witness is not None and not verdict.exact

    def test_hexagon_inconclusive_near_threshold(self):
        hexn = hexagon_norm()
        verdict = classify(CustomGaugeNorm(lambda t: hexn.boundary_point(t), n=4096))
        assert verdict.verdict is Verdict.INCONCLUSIVE
        assert verdict.witness is None
