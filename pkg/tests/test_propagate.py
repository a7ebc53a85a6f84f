import math
from fractions import Fraction

import pytest

from minkplane.geom import Point2
from minkplane.norms import PNorm, hexagon_norm, octagon_norm, square_norm
from minkplane.probe import NotUrtcError
from minkplane.propagate import (
    COLLINEAR_CHAIN,
    DIST_PRESERVED,
    MIDPOINT_RULE,
    SQUEEZE_BOUND,
    AffineMap,
    ComposedMap,
    LedgerError,
    LedgerImportError,
    LinearMap,
    PointwiseMap,
    TabulatedMap,
    WitnessConfig,
    WitnessValidationError,
    derive_midpoint_rule,
    derive_rational,
    derive_scale_down,
    derive_scale_up,
    ledger_to_lines,
    new_ledger,
    read_ledger,
    squeeze_bound,
    verify_map,
    write_ledger,
)

O = Point2(0, 0)


@pytest.fixture(scope="module")
def euclid_ledger():
    led = new_ledger(PNorm(2), 1)
    derive_midpoint_rule(led)
    derive_scale_up(led, 2)
    derive_scale_down(led, 2)
    derive_rational(led, 3, 2)
    return led


class TestNewLedger:
    def test_axiom(self):
        led = new_ledger(PNorm(2), 1)
        assert len(led.facts) == 1
        axiom = led.axiom
        assert axiom.kind == DIST_PRESERVED and axiom.params["q"] == 1
        assert axiom.parents == ()
        assert axiom.witness.validate(led.norm).ok(1e-8)

    def test_hexagon_axiom_is_exact(self):
        led = new_ledger(hexagon_norm(), 1)
        assert all(p.is_exact for p in led.axiom.witness.points.values())

    def test_not_urtc_rejected(self):
        with pytest.raises(NotUrtcError):
            new_ledger(square_norm(), 1)

    def test_bad_distance(self):
        with pytest.raises(LedgerError):
            new_ledger(PNorm(2), 0)


class TestMidpointRule:
    def test_witness_is_probe(self, euclid_ledger):
        fact = euclid_ledger.find(MIDPOINT_RULE, q=Fraction(1))
        assert fact is not None
        assert set(fact.witness.points) == {"a", "b1", "b2", "b3", "c1", "c2", "c3"}
        assert len(fact.witness.required_distances) == 11
        assert fact.witness.validate(euclid_ledger.norm).max_distance_residual < 1e-8

    def test_fractional_pnorm(self):
        led = new_ledger(PNorm(1.5), 1)
        fact = derive_midpoint_rule(led)
        assert fact.witness.validate(led.norm).ok(1e-8)

    def test_missing_base_fact(self):
        led = new_ledger(PNorm(2), 1)
        with pytest.raises(LedgerError):
            derive_midpoint_rule(led, q=Fraction(1, 3))


class TestScaleUp:
    def test_euclid_chain(self, euclid_ledger):
        chain = euclid_ledger.find(COLLINEAR_CHAIN, n=2, q=Fraction(1))
        pts = chain.witness.points
        assert set(pts) == {"b0", "b2", "b4"}
        assert float(pts["b0"].x) == 0 and float(pts["b2"].x) == pytest.approx(1)
        assert float(pts["b4"].x) == pytest.approx(2)
        dist = euclid_ledger.find(DIST_PRESERVED, q=Fraction(2))
        assert dist is not None and dist.rule == "scale-up"

    def test_hexagon_chain_exact(self):
        led = new_ledger(hexagon_norm(), 1)
        dist, chain = derive_scale_up(led, 3)
        assert dist.params["q"] == 3
        pts = chain.witness.points
        assert pts["b6"] == Point2(3, 0)
        assert led.norm.gauge(pts["b6"] - pts["b0"]) == 3
        assert chain.witness.validate(led.norm).ok(1e-8)

    def test_n_one_rejected(self):
        led = new_ledger(PNorm(2), 1)
        with pytest.raises(LedgerError):
            derive_scale_up(led, 1)

    def test_deduplication(self, euclid_ledger):
        before = len(euclid_ledger.facts)
        derive_scale_up(euclid_ledger, 2)
        assert len(euclid_ledger.facts) == before


class TestScaleDown:
    def test_euclid_half(self, euclid_ledger):
        fact = euclid_ledger.find(DIST_PRESERVED, q=Fraction(1, 2))
        assert fact.rule == "scale-down"
        w = fact.witness
        assert set(w.points) == {"a", "b", "c", "e", "f"}
        assert w.collinear_triples == (("c", "a", "e"), ("c", "b", "f"))
        report = w.validate(euclid_ledger.norm)
        assert report.max_distance_residual < 1e-8
        assert report.max_collinear_residual < 1e-8

    def test_pnorm3_fifth(self):
        led = new_ledger(PNorm(3), 1)
        fact = derive_scale_down(led, 5)
        assert fact.params["q"] == Fraction(1, 5)
        assert fact.witness.validate(led.norm).ok(1e-8)

    def test_n_one_rejected(self):
        led = new_ledger(PNorm(2), 1)
        with pytest.raises(LedgerError):
            derive_scale_down(led, 1)


class TestDeriveRational:
    def test_three_halves(self, euclid_ledger):
        fact = euclid_ledger.find(DIST_PRESERVED, q=Fraction(3, 2))
        assert fact is not None
        assert fact.witness.validate(euclid_ledger.norm).ok(1e-8)

    def test_identity_returns_axiom(self, euclid_ledger):
        assert derive_rational(euclid_ledger, 1, 1).id == 0

    def test_reducible_fractions_dedupe(self):
        led = new_ledger(PNorm(2), 1)
        f1 = derive_rational(led, 1, 2)
        f2 = derive_rational(led, 2, 4)
        assert f1.id == f2.id

    def test_hexagon_seven_fifths(self):
        led = new_ledger(hexagon_norm(), 1)
        fact = derive_rational(led, 7, 5)
        assert fact.params["q"] == Fraction(7, 5)
        assert fact.witness.validate(led.norm).ok(1e-8)

    @pytest.mark.parametrize("make", [lambda: PNorm(1.5), octagon_norm])
    def test_closure_on_other_corpus_norms(self, make):
        led = new_ledger(make(), 1)
        for p in range(1, 7):
            for q in range(1, 7):
                fact = derive_rational(led, p, q)
                assert fact.params["q"] == Fraction(p, q)
        for fact in led.facts:
            assert fact.witness.validate(led.norm).ok(1e-7)

    def test_parents_exist(self, euclid_ledger):
        for fact in euclid_ledger.facts:
            for pid in fact.parents:
                assert 0 <= pid < fact.id


class TestSqueezeBound:
    def brute_force_expected(self, r, eps):
        """Independent oracle: smallest-denominator q below eps/2, then the
        smallest-denominator p with |p - r| < q."""
        dq = 1
        while Fraction(1, dq) >= Fraction(eps) / 2:
            dq += 1
        q = Fraction(1, dq)
        dp = 0
        while True:
            dp += 1
            p = Fraction(round(r * dp), dp)
            if p > 0 and abs(p - r) < q:
                return p, q

    def test_root_two_example(self):
        led = new_ledger(PNorm(2), 1)
        fact = squeeze_bound(led, Point2(0.0, 0.0), Point2(math.sqrt(2), 0.0), 0.01)
        p, q = fact.params["p"], fact.params["q"]
        exp_p, exp_q = self.brute_force_expected(math.sqrt(2), 0.01)
        assert (p, q) == (exp_p, exp_q) == (Fraction(17, 12), Fraction(1, 200))
        assert float(q) < 0.01
        assert float(p - q) < math.sqrt(2) < float(p + q)
        r = fact.params["r"]
        assert float(p - q) > r - 0.01 and float(p + q) < r + 0.01
        assert fact.witness.validate(led.norm).max_distance_residual < 1e-8
        assert fact.kind == SQUEEZE_BOUND

    def test_parent_distances_derived(self):
        led = new_ledger(PNorm(2), 1)
        fact = squeeze_bound(led, Point2(0.0, 0.0), Point2(math.sqrt(2), 0.0), 0.05)
        p, q = fact.params["p"], fact.params["q"]
        assert led.find(DIST_PRESERVED, q=p) is not None
        assert led.find(DIST_PRESERVED, q=q) is not None

    def test_eps_range_enforced(self):
        led = new_ledger(PNorm(2), 1)
        b = Point2(math.sqrt(2), 0.0)
        with pytest.raises(LedgerError):
            squeeze_bound(led, Point2(0.0, 0.0), b, 0.5)
        with pytest.raises(LedgerError):
            squeeze_bound(led, Point2(0.0, 0.0), Point2(0.0, 0.0), 0.01)


class TestVerifyMap:
    def test_rotation_translation_passes(self, euclid_ledger):
        iso = ComposedMap((AffineMap.rotation(math.radians(37)),
                           AffineMap.translation(0.4, -0.9)))
        report = verify_map(PNorm(2), iso, euclid_ledger, samples=150, seed=2)
        assert report.passed, report.first_violation
        assert report.facts_checked == len(euclid_ledger.facts)

    def test_dilation_fails_unit_pairs(self, euclid_ledger):
        report = verify_map(PNorm(2), AffineMap.scaling(1.1), euclid_ledger,
                            samples=150, seed=2)
        assert not report.passed
        assert "unit pair" in report.first_violation

    def test_sine_wiggle_fails(self, euclid_ledger):
        wig = PointwiseMap(
            lambda p: Point2(float(p.x), float(p.y) + 0.2 * math.sin(float(p.x))),
            "sine-wiggle",
        )
        assert not verify_map(PNorm(2), wig, euclid_ledger, samples=150, seed=2).passed

    def test_hexagon_linear_symmetry_passes(self):
        led = new_ledger(hexagon_norm(), 1)
        derive_rational(led, 3, 2)
        sym = LinearMap(1, -1, 1, 0)  # cycles the hexagon's vertices
        verts = hexagon_norm().vertices
        assert {sym(v) for v in verts} == set(verts)
        report = verify_map(hexagon_norm(), sym, led, samples=120, seed=4)
        assert report.passed, report.first_violation

    def test_octagon_reflection_symmetry_passes(self):
        led = new_ledger(octagon_norm(), 1)
        derive_rational(led, 3, 2)
        swap = LinearMap(0, 1, 1, 0)  # x <-> y preserves the octagon
        verts = octagon_norm().vertices
        assert {swap(v) for v in verts} == set(verts)
        report = verify_map(octagon_norm(), swap, led, samples=120, seed=4)
        assert report.passed, report.first_violation

    def test_dilation_fails_on_every_urtc_corpus_norm(self):
        for norm in (PNorm(2), PNorm(1.5), hexagon_norm(), octagon_norm()):
            led = new_ledger(norm, 1)
            report = verify_map(norm, AffineMap.scaling(1.1), led, samples=60, seed=6)
            assert not report.passed

    def test_midpoint_parallelogram_checked(self, euclid_ledger):
        # Reflection across the x axis preserves distances but flips
        # orientation; it must still satisfy the parallelogram identity.
        refl = AffineMap(1.0, 0.0, 0.0, -1.0)
        assert verify_map(PNorm(2), refl, euclid_ledger, samples=50, seed=8).passed

    def test_tabulated_map_replays_witnesses(self, euclid_ledger):
        table = {}
        for fact in euclid_ledger.facts:
            for p in fact.witness.points.values():
                table[p] = p
        ident = TabulatedMap(table)
        report = verify_map(PNorm(2), ident, euclid_ledger, samples=0, seed=0)
        assert report.passed
        with pytest.raises(KeyError):
            ident(Point2(123.0, 456.0))


class TestLedgerIO:
    def test_round_trip_byte_identical(self, euclid_ledger, tmp_path):
        path = tmp_path / "ledger.jsonl"
        write_ledger(euclid_ledger, path)
        again = read_ledger(path)
        assert ledger_to_lines(euclid_ledger) == ledger_to_lines(again)
        assert len(again.facts) == len(euclid_ledger.facts)
        assert again.find(DIST_PRESERVED, q=Fraction(3, 2)) is not None

    def test_exact_ledger_round_trip(self, tmp_path):
        led = new_ledger(hexagon_norm(), 1)
        derive_scale_up(led, 3)
        path = tmp_path / "hex.jsonl"
        write_ledger(led, path)
        again = read_ledger(path)
        chain = again.find(COLLINEAR_CHAIN, n=3, q=Fraction(1))
        assert chain.witness.points["b6"] == Point2(3, 0)
        assert chain.witness.points["b6"].is_exact

    def test_tampered_point_detected(self, euclid_ledger, tmp_path):
        import json

        path = tmp_path / "ledger.jsonl"
        write_ledger(euclid_ledger, path)
        lines = path.read_text().splitlines()
        rec = json.loads(lines[1])
        name = next(iter(rec["witness"]["points"]))
        rec["witness"]["points"][name][0] = "0.333"
        lines[1] = json.dumps(rec, sort_keys=True, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(LedgerImportError):
            read_ledger(path)

    def test_missing_header_detected(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"record":"fact"}\n')
        with pytest.raises(LedgerImportError):
            read_ledger(path)

    def test_nonsequential_ids_detected(self, euclid_ledger, tmp_path):
        path = tmp_path / "ledger.jsonl"
        write_ledger(euclid_ledger, path)
        lines = path.read_text().splitlines()
        del lines[1]
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(LedgerImportError):
            read_ledger(path)


class TestWitnessValidation:
    def test_broken_witness_rejected_on_append(self):
        led = new_ledger(PNorm(2), 1)
        bad = WitnessConfig(
            {"a": Point2(0.0, 0.0), "b": Point2(0.5, 0.0)},
            (("a", "b", 1.0),),
        )
        with pytest.raises(WitnessValidationError):
            led.append(DIST_PRESERVED, {"q": Fraction(7)}, "bogus", (), bad)

    def test_collinearity_residual(self):
        w = WitnessConfig(
            {"a": Point2(0.0, 0.0), "b": Point2(1.0, 0.0), "c": Point2(2.0, 0.5)},
            (),
            (("a", "b", "c"),),
        )
        report = w.validate(PNorm(2))
        assert report.max_collinear_residual > 1e-3
