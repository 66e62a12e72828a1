"""Tests for the three pulse designers.

Golden values: the on-off-on middle duration for omega0 = 4 sqrt(2/3) is
0.3861 (total 2.7555) and for omega0 = 10 the largest of three roots is
1.1763 (total 1.9653), both in units of 1/omega_b.  The sech widths are
checked against a dense scan of the phase-sum curve, and every design is
validated through the exact propagator residual.
"""

import math

import numpy as np
import pytest

from qdpulse import (
    BelowThresholdError,
    DomainError,
    NoRootError,
    PoleProximityError,
    SignVariant,
    SystemParams,
    THRESHOLD_RATIO,
    design_constant,
    design_on_off_on,
    design_sech,
    min_time_curve,
    phase_condition_residual,
    sech_final_amplitude,
    sequence_propagator,
    transcendental_residual,
)

PI = math.pi
OMEGA0_SECH2 = 4.0 * math.sqrt(2.0 / 3.0)  # 3.2660, the n=2 sech amplitude

# frozen from the root solver, cross-checked against an independent
# bisection scan during development
TAU2_STAR = 0.386086679019132
T_STAR = 2.755505974570661
TAU1_LOWER = 1.8088808161353918
TAU3_LOWER = 0.5605384794161374
TAU2_STAR_10 = 1.1763213913355832
T_STAR_10 = 1.96527126225421
T_STAR_50 = 1.6499360971293873


class TestConstantDesign:
    def test_minimum_branch(self):
        d = design_constant(SystemParams(1.0))
        assert d.total_T == pytest.approx(PI, abs=1e-15)
        assert d.omega0 == pytest.approx(math.sqrt(6.0), abs=1e-15)

    def test_design_closes_phase_condition(self):
        params = SystemParams(1.0, math.sqrt(6.0))
        d = design_constant(params)
        u = sequence_propagator(params, d.to_sequence())
        assert phase_condition_residual(u, d.total_T, params) < 1e-25

    def test_higher_branches(self):
        d = design_constant(SystemParams(1.0), k=4)
        assert d.omega0 == pytest.approx(math.sqrt(30.0), abs=1e-14)
        assert d.total_T == pytest.approx(PI)
        params = SystemParams(1.0, d.omega0)
        u = sequence_propagator(params, d.to_sequence())
        assert phase_condition_residual(u, d.total_T, params) < 1e-24

    def test_odd_branch_rejected(self):
        with pytest.raises(DomainError):
            design_constant(SystemParams(1.0), k=3)
        with pytest.raises(DomainError):
            design_constant(SystemParams(1.0), k=0)

    def test_scales_with_omega_b(self):
        d = design_constant(SystemParams(2.5))
        assert d.total_T == pytest.approx(PI / 2.5)
        assert d.omega0 == pytest.approx(2.5 * math.sqrt(6.0))


class TestSechFinalAmplitude:
    def test_known_point(self):
        # at n=2, x=sqrt(3)/2 the two factor phases add to pi
        value = sech_final_amplitude(2, math.sqrt(3.0) / 2.0)
        assert value.real == pytest.approx(-1.0 / math.sqrt(2.0), abs=1e-15)
        assert value.imag == pytest.approx(0.0, abs=1e-15)

    def test_zero_width_limit(self):
        value = sech_final_amplitude(1, 1e-300)
        assert value == pytest.approx(-1.0 / math.sqrt(2.0))

    def test_unimodular_product(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            x = rng.uniform(1e-3, 30.0)
            assert abs(sech_final_amplitude(n, x)) == pytest.approx(
                1.0 / math.sqrt(2.0), abs=1e-13
            )


class TestSechDesign:
    def test_n2_exact(self):
        d = design_sech(SystemParams(1.0), 2)
        assert d.t_p == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-9)
        assert d.omega0 == pytest.approx(OMEGA0_SECH2, abs=1e-8)
        assert d.omega0 * d.t_p == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)
        assert d.truncation_halfwidth == pytest.approx(20.0 * d.t_p)

    def test_n2_satisfies_final_condition(self):
        d = design_sech(SystemParams(1.0), 2)
        value = sech_final_amplitude(2, d.t_p)
        assert abs(value + 1.0 / math.sqrt(2.0)) < 1e-12

    def test_n3_against_dense_scan(self):
        """Oracle: dense scan of the phase sum for its first target crossing."""
        d = design_sech(SystemParams(1.0), 3)
        xs = np.linspace(1e-9, 10.0, 400_001)
        sums = 2.0 * (
            np.arctan(xs / 0.5) + np.arctan(xs / 1.5) + np.arctan(xs / 2.5)
        )
        crossing = int(np.searchsorted(sums, 2.0 * PI))
        assert xs[crossing - 1] <= d.t_p <= xs[crossing]
        assert d.t_p == pytest.approx(2.3979157616563596, abs=1e-9)

    def test_width_grows_from_n2_to_n3(self):
        d2 = design_sech(SystemParams(1.0), 2)
        d3 = design_sech(SystemParams(1.0), 3)
        assert d3.t_p > d2.t_p

    def test_n1_has_no_root(self):
        # a single factor's phase stays below pi for any finite width
        with pytest.raises(NoRootError):
            design_sech(SystemParams(1.0), 1)

    def test_scales_with_omega_b(self):
        d = design_sech(SystemParams(4.0), 2)
        assert d.t_p == pytest.approx(math.sqrt(3.0) / 8.0, abs=1e-10)
        assert d.omega0 == pytest.approx(4.0 * OMEGA0_SECH2, abs=1e-7)


class TestTranscendentalResidual:
    def test_resonance_dip_sech_amplitude(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        assert transcendental_residual(params, 0.3861) < 1e-4

    def test_resonance_dip_amplitude_ten(self):
        params = SystemParams(1.0, 10.0)
        assert transcendental_residual(params, 1.1763) < 1e-4

    def test_threshold_amplitude_vanishes_at_left_edge(self):
        # at the threshold amplitude the dressed frequency is exactly twice
        # omega_b, so both tangents vanish as tau2 -> 0+
        params = SystemParams(1.0, math.sqrt(6.0))
        assert transcendental_residual(params, 1e-12) < 1e-20

    def test_domain_check(self):
        params = SystemParams(1.0, 10.0)
        with pytest.raises(DomainError):
            transcendental_residual(params, 0.0)
        with pytest.raises(DomainError):
            transcendental_residual(params, PI / 2.0)

    def test_pole_guard(self):
        params = SystemParams(1.0, 10.0)
        omega = params.omega
        pole = PI / 2.0 - (PI / 2.0) / omega
        with pytest.raises(PoleProximityError):
            transcendental_residual(params, pole + 1e-9)

    def test_large_residual_off_resonance(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        assert transcendental_residual(params, 0.2) > 1e-2


class TestOnOffOnDesign:
    def test_sech_amplitude_case(self):
        lower, upper = design_on_off_on(SystemParams(1.0, OMEGA0_SECH2))
        assert lower.sign_variant is SignVariant.LOWER
        assert upper.sign_variant is SignVariant.UPPER
        assert lower.tau2 == pytest.approx(TAU2_STAR, abs=1e-10)
        assert lower.total_T == pytest.approx(T_STAR, abs=1e-10)
        assert lower.tau2 == pytest.approx(0.3861, abs=1e-3)
        assert lower.total_T == pytest.approx(2.7555, abs=1e-3)
        assert lower.tau1 == pytest.approx(TAU1_LOWER, abs=1e-10)
        assert lower.tau3 == pytest.approx(TAU3_LOWER, abs=1e-10)
        assert lower.tau1 == pytest.approx(1.8088, abs=1e-3)
        assert lower.tau3 == pytest.approx(0.5605, abs=1e-3)

    def test_variants_swap_outer_segments(self):
        lower, upper = design_on_off_on(SystemParams(1.0, OMEGA0_SECH2))
        assert lower.tau1 == pytest.approx(upper.tau3, abs=1e-14)
        assert lower.tau3 == pytest.approx(upper.tau1, abs=1e-14)
        assert lower.tau2 == upper.tau2
        assert lower.total_T == upper.total_T

    def test_amplitude_ten_multiple_roots(self):
        lower, _ = design_on_off_on(SystemParams(1.0, 10.0))
        assert len(lower.all_roots) == 3
        assert lower.tau2 == max(lower.all_roots)
        assert lower.tau2 == pytest.approx(TAU2_STAR_10, abs=1e-10)
        assert lower.tau2 == pytest.approx(1.1763, abs=1e-3)
        assert lower.total_T == pytest.approx(1.9653, abs=1e-3)

    def test_duration_relations_exact(self):
        for omega0 in (OMEGA0_SECH2, 5.0, 10.0, 37.0):
            params = SystemParams(1.0, omega0)
            lower, upper = design_on_off_on(params)
            omega = params.omega
            # outer-segment gap and total phase budget hold by construction
            assert upper.tau3 - upper.tau1 == pytest.approx(PI / omega, abs=1e-12)
            assert lower.tau3 - lower.tau1 == pytest.approx(-PI / omega, abs=1e-12)
            for d in (lower, upper):
                assert d.tau1 + 2 * d.tau2 + d.tau3 == pytest.approx(PI, abs=1e-12)
                assert d.total_T == pytest.approx(PI - d.tau2, abs=1e-12)
                assert d.total_T < PI
                assert min(d.tau1, d.tau2, d.tau3) > 0

    def test_both_variants_close_phase_condition(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        residuals = []
        for d in design_on_off_on(params):
            u = sequence_propagator(params, d.to_sequence())
            residuals.append(phase_condition_residual(u, d.total_T, params))
        assert residuals[0] < 1e-20
        assert residuals[1] < 1e-20
        assert abs(residuals[0] - residuals[1]) < 1e-10

    def test_transcendental_residual_at_root(self):
        params = SystemParams(1.0, 10.0)
        lower, _ = design_on_off_on(params)
        assert transcendental_residual(params, lower.tau2) < 1e-18

    def test_below_threshold(self):
        with pytest.raises(BelowThresholdError):
            design_on_off_on(SystemParams(1.0, 2.4))
        with pytest.raises(BelowThresholdError):
            design_on_off_on(SystemParams(1.0, math.sqrt(6.0)))

    def test_just_above_threshold(self):
        d = design_on_off_on(SystemParams(1.0, math.sqrt(6.0) + 1e-6))[0]
        assert abs(d.total_T - PI) < 1e-2
        assert d.tau2 > 0

    def test_threshold_scales_with_omega_b(self):
        with pytest.raises(BelowThresholdError):
            design_on_off_on(SystemParams(2.0, 2.0 * 2.4))
        design_on_off_on(SystemParams(2.0, 2.0 * 2.5))  # feasible


class TestMinTimeCurve:
    def test_monotone_and_asymptote(self):
        curve = min_time_curve(1.0, [3.0, 5.0, 10.0, 20.0, 50.0])
        durations = [t for _, t in curve]
        assert all(b <= a for a, b in zip(durations, durations[1:]))
        t50 = durations[-1]
        assert PI / 2.0 < t50 < PI / 2.0 + 0.2
        assert t50 == pytest.approx(T_STAR_50, abs=1e-9)

    def test_threshold_limit(self):
        (_, t), = min_time_curve(1.0, [THRESHOLD_RATIO + 1e-6])
        assert t == pytest.approx(PI, abs=1e-2)

    def test_propagates_below_threshold(self):
        with pytest.raises(BelowThresholdError):
            min_time_curve(1.0, [5.0, 2.0])
