import json
from fractions import Fraction

import pytest

from conftest import ff
from su2haar.harness import (
    DEFAULT_COEFF_POOL,
    FuzzConfig,
    check_proven_direction,
    classify_instance,
    fuzz,
    generate_instance,
    legendre_moment_scan,
    legendre_power_moments,
    run_verification_suite,
    trial_rng,
)
from su2haar.powers import power_scan
from su2haar.scalars import HalfInt

H = Fraction(1, 2)


class TestClassify:
    def test_single(self):
        assert classify_instance(ff(((H, H, H), 1))) == "single"

    def test_two_term(self):
        assert classify_instance(ff(((H, H, H), 1), ((1, 0, 0), 1))) == "two-term"

    def test_three_term_rank_1(self):
        f = ff(((0, 0, 0), 1), ((1, 0, 0), 1), ((2, 0, 0), 1))
        assert classify_instance(f) == "three-term-rank-1"

    def test_three_term_rank_2(self):
        f = ff(((0, 0, 0), 1), ((1, 1, 1), 1), ((2, 2, 2), 1))
        assert classify_instance(f) == "three-term-rank-2"

    def test_three_term_rank_3(self):
        f = ff(((1, 1, 0), 1), ((1, 0, 1), 1), ((1, -1, -1), 1))
        assert classify_instance(f) == "three-term-rank-3"

    def test_general(self):
        f = ff(((1, 1, 0), 1), ((1, 0, 1), 1), ((1, -1, -1), 1), ((0, 0, 0), 1))
        assert classify_instance(f) == "general-k"


class TestProvenDirection:
    def test_hull_excluding_consistent(self):
        report = check_proven_direction(ff(((H, H, H), 1)), 8)
        assert report.verdict == "consistent"
        assert not report.origin_inside
        assert report.first_nonzero_p is None

    def test_hull_containing_with_nonzero(self):
        report = check_proven_direction(ff(((1, 0, 0), 1)), 2)
        assert report.verdict == "consistent"
        assert report.origin_inside
        assert report.first_nonzero_p == 2

    def test_two_term_witness_instance(self):
        f = ff(((H, H, -H), 1), ((H, -H, H), 1))
        report = check_proven_direction(f, 2)
        assert report.verdict == "consistent"
        assert report.scan[1][1].as_rational() == -1

    def test_inconclusive_needs_origin_inside_and_all_zero(self):
        # rank-2 style cancellation cannot be ruled out by a scan; at small
        # pmax even honest instances look inconclusive
        f = ff(((1, 0, 0), 1))
        report = check_proven_direction(f, 1)
        assert report.verdict == "inconclusive-candidate"

    def test_report_json_shape(self):
        report = check_proven_direction(ff(((H, H, H), 1)), 3, trial=7)
        obj = report.to_json()
        assert obj["schema"] == 1
        assert obj["trial"] == 7
        assert obj["case"] == "single"
        assert len(obj["scan"]) == 3


class TestFuzz:
    def test_determinism_byte_identical(self):
        cfg = FuzzConfig(seed=42, trials=25, l_max=HalfInt(2), k_max=4, p_max=6)
        r1, s1 = fuzz(cfg)
        r2, s2 = fuzz(cfg)
        lines1 = [json.dumps(r.to_json(), sort_keys=True) for r in r1]
        lines2 = [json.dumps(r.to_json(), sort_keys=True) for r in r2]
        assert lines1 == lines2
        assert s1.to_json() == s2.to_json()

    def test_no_violations_small_run(self):
        cfg = FuzzConfig(seed=1, trials=50, p_max=8)
        reports, summary = fuzz(cfg)
        assert summary.trials_run == 50
        assert summary.violations == []
        assert len(reports) == 50
        assert sum(summary.counts_by_verdict.values()) == 50

    def test_rank2_bias_generator_contract(self):
        cfg = FuzzConfig(seed=5, trials=40, rank2_bias=1.0, k_max=3, p_max=2)
        for trial in range(cfg.trials):
            f = generate_instance(trial_rng(cfg.seed, trial), cfg)
            assert classify_instance(f) == "three-term-rank-2"

    def test_trial_rng_stability(self):
        a = trial_rng(9, 3).random()
        b = trial_rng(9, 3).random()
        c = trial_rng(9, 4).random()
        assert a == b != c

    def test_generated_instances_respect_config(self):
        cfg = FuzzConfig(seed=11, trials=1, l_max=HalfInt(Fraction(3, 2)), k_max=3, p_max=2)
        for trial in range(60):
            f = generate_instance(trial_rng(cfg.seed, trial), cfg)
            assert 1 <= len(f) <= 3
            for index, coeff in f.terms:
                assert index.l.twice <= 3
                assert coeff in DEFAULT_COEFF_POOL

    def test_config_validation(self):
        with pytest.raises(ValueError):
            FuzzConfig(seed=0, trials=0)
        with pytest.raises(ValueError):
            FuzzConfig(seed=0, trials=1, rank2_bias=1.5)
        with pytest.raises(ValueError):
            FuzzConfig(seed=0, trials=1, coeff_pool=((Fraction(0), Fraction(0)),))
        with pytest.raises(ValueError):
            FuzzConfig(seed=0, trials=1, rank2_bias=0.5, k_max=2)
        with pytest.raises(ValueError):
            FuzzConfig(seed=0, trials=1, rank2_bias=0.5, l_max=HalfInt(0))


class TestLegendreMoments:
    def test_constant(self):
        assert legendre_moment_scan({0: (Fraction(1), Fraction(0))}, 3) == (
            1,
            (Fraction(1), Fraction(0)),
        )

    def test_pure_p1(self):
        result = legendre_moment_scan({1: (Fraction(1), Fraction(0))}, 4)
        assert result == (2, (Fraction(1, 3), Fraction(0)))

    def test_mixed(self):
        result = legendre_moment_scan(
            {1: (Fraction(1), Fraction(0)), 2: (Fraction(1), Fraction(0))}, 4
        )
        assert result == (2, (Fraction(8, 15), Fraction(0)))

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            legendre_moment_scan({1: (Fraction(0), Fraction(0))}, 3)
        with pytest.raises(ValueError):
            legendre_moment_scan({}, 3)

    @pytest.mark.parametrize("l", range(0, 5))
    def test_cross_check_against_power_scan(self, l):
        """Moments of A*P_l match power integrals of A*t[l,0,0] term by term."""
        from su2haar.scalars import RadicalScalar

        coeff = (Fraction(1), Fraction(2))
        moments = legendre_power_moments({l: coeff}, 6)
        f = ff(((l, 0, 0), coeff))
        for (p, value), (re, im) in zip(power_scan(f, 6), moments):
            assert value == RadicalScalar.from_gaussian(re, im), f"P={p}"


class TestVerificationSuite:
    def test_all_items_pass(self):
        report = run_verification_suite()
        for item in report.items:
            assert item.passed, f"{item.name}: {item.detail}"
        assert report.all_passed
        names = [i.name for i in report.items]
        assert "schur-orthogonality" in names
        assert "two-term-criterion" in names
        assert "threshold-soundness" in names
