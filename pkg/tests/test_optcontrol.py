"""Tests for the bounded optimal-control optimizer and the duration scan.

The error landscape has a sharp cliff at the analytic minimum time: for
omega0 = 4 sqrt(2/3) the best reachable error sits on a plateau left of
T ~ 2.7555 and collapses to ~0 right of it.  These tests pin the gradient
against finite differences, the feasible-point behavior, the cliff, and
the scan bookkeeping; the full coincidence runs live in the acceptance
suite.
"""

import io
import math

import numpy as np
import pytest

from qdpulse import (
    DomainError,
    NoFeasibleTimeError,
    SystemParams,
    coincidence_report,
    design_on_off_on,
    objective_and_gradient,
    optimize_control,
    scan_min_time,
)
from qdpulse.optcontrol import write_coincidence_csv, write_scan_csv

OMEGA0_SECH2 = 4.0 * math.sqrt(2.0 / 3.0)
PI = math.pi


def finite_difference_gradient(omega_b, T, values, step=1e-6):
    grad = np.zeros(len(values))
    for k in range(len(values)):
        up = values.copy()
        up[k] += step
        down = values.copy()
        down[k] -= step
        grad[k] = (
            objective_and_gradient(omega_b, T, up)[0]
            - objective_and_gradient(omega_b, T, down)[0]
        ) / (2 * step)
    return grad


class TestGradient:
    def test_matches_finite_differences(self):
        rng = np.random.default_rng(19)
        for n in (20, 63):
            values = rng.uniform(0.2, OMEGA0_SECH2, n)
            _, grad = objective_and_gradient(1.0, 2.7, values)
            fd = finite_difference_gradient(1.0, 2.7, values)
            scale = np.maximum(np.abs(fd), 1e-8)
            assert np.max(np.abs(grad - fd) / scale) < 1e-5

    def test_error_at_feasible_control(self):
        # the constant design sampled on a grid is an exact zero of the error
        n = 100
        values = np.full(n, math.sqrt(6.0))
        pe, _ = objective_and_gradient(1.0, PI, values)
        assert abs(pe) < 1e-12


class TestOptimizeControl:
    def test_constant_pulse_duration_is_feasible(self):
        for omega0 in (math.sqrt(6.0), 5.0):
            out = optimize_control(SystemParams(1.0, omega0), PI, restarts=2)
            assert out.error < 1e-6

    def test_right_of_cliff_is_feasible(self):
        out = optimize_control(SystemParams(1.0, OMEGA0_SECH2), 2.76, restarts=2)
        assert out.error < 1e-4
        assert out.converged

    def test_left_of_cliff_plateau(self):
        out = optimize_control(SystemParams(1.0, OMEGA0_SECH2), 2.70, restarts=2)
        # derived plateau: recorded, must stay clearly away from zero
        print(f"plateau error at T=2.70: {out.error:.6e}")
        assert out.error > 1e-3

    def test_near_bang_structure_right_of_cliff(self):
        omega0 = OMEGA0_SECH2
        out = optimize_control(SystemParams(1.0, omega0), 2.76, restarts=2)
        vals = out.grid.values
        near_edge = (vals < 0.05 * omega0) | (vals > 0.95 * omega0)
        assert np.mean(near_edge) >= 0.9

    def test_structured_start_not_out_trained_by_random(self):
        for T in (2.70, 2.76):
            out = optimize_control(
                SystemParams(1.0, OMEGA0_SECH2), T, restarts=2, stop_below=0.0
            )
            assert out.random_best_error is not None
            assert out.structured_error <= max(10.0 * out.random_best_error, 1e-9)

    def test_error_clamped_to_unit_interval(self):
        out = optimize_control(SystemParams(1.0, OMEGA0_SECH2), 2.80, restarts=1)
        assert 0.0 <= out.error <= 1.0

    def test_deterministic(self):
        a = optimize_control(SystemParams(1.0, 7.0), 2.2, restarts=2, seed=5,
                             stop_below=0.0)
        b = optimize_control(SystemParams(1.0, 7.0), 2.2, restarts=2, seed=5,
                             stop_below=0.0)
        assert a.error == b.error
        np.testing.assert_array_equal(a.grid.values, b.grid.values)

    def test_validation(self):
        with pytest.raises(DomainError):
            optimize_control(SystemParams(1.0, 3.0), -1.0)
        with pytest.raises(DomainError):
            optimize_control(SystemParams(1.0, 3.0), 1.0, n_slices=1)

    def test_grid_to_sequence(self):
        out = optimize_control(SystemParams(1.0, 5.0), 2.4, restarts=0)
        seq = out.grid.to_sequence()
        assert len(seq) == out.grid.n_slices
        assert seq.total_duration == pytest.approx(2.4, abs=1e-9)


class TestScan:
    def test_locates_cliff_on_coarse_grid(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        scan = scan_min_time(params, (2.70, 2.80), dt_grid=0.05, restarts=2)
        t_star = design_on_off_on(params)[0].total_T
        assert abs(scan.t_min - t_star) <= 0.05
        assert len(scan.points) == 3
        for p in scan.points:
            assert 0.0 <= p.best_error <= 1.0

    def test_error_monotone_once_feasible(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        scan = scan_min_time(params, (2.70, 2.80), dt_grid=0.02, restarts=2)
        errors = [p.best_error for p in scan.points]
        below = [i for i, e in enumerate(errors) if e < 1e-4]
        for i in below:
            for j in range(i + 1, len(errors)):
                assert errors[j] < 10.0 * 1e-4

    def test_no_feasible_duration(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        with pytest.raises(NoFeasibleTimeError):
            scan_min_time(params, (2.55, 2.60), dt_grid=0.025, restarts=1)

    def test_range_validation(self):
        with pytest.raises(DomainError):
            scan_min_time(SystemParams(1.0, 5.0), (2.0, 1.0))


class TestCoincidence:
    def test_quick_report(self):
        rows = coincidence_report(
            1.0, [OMEGA0_SECH2], dt_grid=0.05, restarts=1,
            grid_below=2, grid_above=1,
        )
        (row,) = rows
        assert row.gap <= 0.05 + 1e-9
        assert row.t_analytic == pytest.approx(2.7555, abs=1e-3)


class TestCsvWriters:
    def test_scan_csv(self):
        params = SystemParams(1.0, OMEGA0_SECH2)
        scan = scan_min_time(params, (2.75, 2.80), dt_grid=0.05, restarts=1)
        buf = io.StringIO()
        write_scan_csv(buf, OMEGA0_SECH2, scan.points)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "omega0,T,Pe,converged,restarts"
        assert len(lines) == 1 + len(scan.points)
        cells = lines[1].split(",")
        assert float(cells[0]) == pytest.approx(OMEGA0_SECH2)
        assert cells[3] in ("0", "1")

    def test_coincidence_csv(self):
        rows = coincidence_report(
            1.0, [10.0], dt_grid=0.05, restarts=1, grid_below=1, grid_above=1
        )
        buf = io.StringIO()
        write_coincidence_csv(buf, rows)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "omega0,T_analytic,T_numeric,gap"
        assert len(lines) == 2
