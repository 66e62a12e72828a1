"""Time-domain propagation: unitary three- and two-level dynamics and the
dissipative density-matrix equations.

All integrators use fixed-step RK4 with steps aligned to envelope
switching instants (a span between switches is integrated with a uniform
substep, so no discontinuity is ever straddled).  The default substep is
``min(1e-3/omega_b, span/50)`` per span; passing ``dt`` explicitly uses
``ceil(span/dt)`` substeps instead, which is what the convergence tests
rely on.

The dissipative model evolves the slowly varying envelopes of the density
matrix: populations decay down the cascade (biexciton -> exciton ->
ground) and coherences dephase.  The printed equations leave the exciton
population to be closed by trace conservation, which is exactly the
cascade closure; see ``rk4_density`` in the kernel modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from . import _backend
from .envelopes import ControlEnvelope
from .errors import (
    DomainError,
    NegativePopulationError,
    StepTooLargeError,
    TraceDriftError,
)
from .model import SystemParams, ThreeLevelState, TwoLevelState

#: relative norm drift above which the unitary integrators reject the step
NORM_DRIFT_TOL = 1e-6
#: absolute trace drift tolerance for the dissipative integrator
TRACE_DRIFT_TOL = 1e-6
#: how far below zero a population may dip before it is an error
POPULATION_TOL = 1e-6


@dataclass(frozen=True)
class RateParams:
    """Dissipation (population decay) and dephasing rates, all >= 0.

    ``gamma11``/``gamma22`` are the exciton and biexciton decay rates;
    ``gamma01``/``gamma02``/``gamma12`` the dephasing rates of the
    corresponding coherences.
    """

    gamma11: float = 0.0
    gamma22: float = 0.0
    gamma01: float = 0.0
    gamma02: float = 0.0
    gamma12: float = 0.0

    def __post_init__(self) -> None:
        for name in ("gamma11", "gamma22", "gamma01", "gamma02", "gamma12"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")

    @classmethod
    def uniform(cls, dissipation: float, dephasing: float) -> "RateParams":
        """Equal decay rates on both excited levels, equal dephasing on all
        coherences."""
        return cls(dissipation, dissipation, dephasing, dephasing, dephasing)


@dataclass(frozen=True)
class DensityState:
    """Density-matrix envelopes: three populations plus upper coherences."""

    s00: float
    s11: float
    s22: float
    s01: complex = 0j
    s02: complex = 0j
    s12: complex = 0j

    @classmethod
    def ground(cls) -> "DensityState":
        return cls(1.0, 0.0, 0.0)

    def trace(self) -> float:
        return self.s00 + self.s11 + self.s22

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.s00, self.s11, self.s22, self.s01, self.s02, self.s12],
            dtype=complex,
        )


@dataclass(frozen=True)
class UnitaryTrajectory:
    """Recorded three-level evolution: ``states[i]`` at ``times[i]``."""

    times: np.ndarray
    states: np.ndarray

    def final_state(self) -> ThreeLevelState:
        c = self.states[-1]
        return ThreeLevelState(c[0], c[1], c[2])

    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2

    def to_csv(self, fh: IO[str], comment: str = "units=natural time_unit=1/omega_b",
               time_scale: float = 1.0) -> None:
        fh.write(f"# {comment}\n")
        fh.write("t,re_c0,im_c0,re_c1,im_c1,re_c2,im_c2,pop2\n")
        for t, row in zip(self.times, self.states):
            cells = [repr(float(t) * time_scale)]
            for c in row:
                cells.append(repr(float(c.real)))
                cells.append(repr(float(c.imag)))
            cells.append(repr(float(abs(row[2]) ** 2)))
            fh.write(",".join(cells) + "\n")


@dataclass(frozen=True)
class TwoLevelTrajectory:
    """Recorded reduced-pair evolution (bright, exciton)."""

    times: np.ndarray
    states: np.ndarray

    def final_state(self) -> TwoLevelState:
        a = self.states[-1]
        return TwoLevelState(a[0], a[1])


@dataclass(frozen=True)
class DensityTrajectory:
    """Recorded density-envelope evolution, layout (s00, s11, s22, s01, s02, s12)."""

    times: np.ndarray
    states: np.ndarray

    def populations(self) -> np.ndarray:
        return self.states[:, :3].real

    def final_density(self) -> DensityState:
        s = self.states[-1]
        return DensityState(
            s[0].real, s[1].real, s[2].real, s[3], s[4], s[5]
        )

    def to_csv(self, fh: IO[str], comment: str = "units=natural time_unit=1/omega_b",
               time_scale: float = 1.0) -> None:
        fh.write(f"# {comment}\n")
        fh.write("t,s00,s11,s22,re_s01,im_s01,re_s02,im_s02,re_s12,im_s12\n")
        for t, row in zip(self.times, self.states):
            cells = [repr(float(t) * time_scale)]
            cells += [repr(float(row[j].real)) for j in range(3)]
            for j in (3, 4, 5):
                cells.append(repr(float(row[j].real)))
                cells.append(repr(float(row[j].imag)))
            fh.write(",".join(cells) + "\n")


def biexciton_fidelity(state: ThreeLevelState) -> float:
    """Biexciton population ``|c2|^2`` (phase-insensitive)."""
    return abs(state.c2) ** 2


def _span_steps(params: SystemParams, length: float, dt: float | None) -> int:
    if length <= 0:
        return 0
    if dt is not None:
        if dt <= 0:
            raise DomainError(f"dt must be positive, got {dt}")
        return max(1, math.ceil(length / dt))
    base = min(1e-3 / params.omega_b, length / 50.0)
    return max(1, math.ceil(length / base))


def _integrate(kernel, params: SystemParams, env: ControlEnvelope,
               t_span: tuple[float, float], y0: Iterable[complex],
               dt: float | None, extra: tuple = ()) -> tuple[np.ndarray, np.ndarray]:
    t0, t1 = t_span
    if t1 < t0:
        raise DomainError(f"t_span must be increasing, got {t_span}")
    y0 = np.asarray(list(y0), dtype=complex)
    times = [np.array([t0])]
    chunks = [y0[np.newaxis, :]]
    y = y0
    for span in env.spans(t0, t1):
        n = _span_steps(params, span.t1 - span.t0, dt)
        if n == 0:
            continue
        h = (span.t1 - span.t0) / n
        p0, p1, p2 = span.params
        block = kernel(params.omega_b, *extra, span.mode, p0, p1, p2,
                       span.t0, h, n, y)
        y = block[-1]
        times.append(span.t0 + h * np.arange(1, n + 1))
        chunks.append(block[1:])
    return np.concatenate(times), np.concatenate(chunks, axis=0)


def propagate_three_level(
    params: SystemParams,
    env: ControlEnvelope,
    t_span: tuple[float, float],
    initial: ThreeLevelState,
    dt: float | None = None,
) -> UnitaryTrajectory:
    """RK4 propagation of the rotating-frame three-level amplitudes.

    Raises :class:`StepTooLargeError` if the norm drifts by more than 1e-6
    relative over the run.
    """
    times, states = _integrate(
        _backend.rk4_schrodinger3, params, env, t_span, initial.as_array(), dt
    )
    _check_norm(initial.norm(), states)
    return UnitaryTrajectory(times, states)


def propagate_two_level(
    params: SystemParams,
    env: ControlEnvelope,
    t_span: tuple[float, float],
    initial: TwoLevelState,
    dt: float | None = None,
) -> TwoLevelTrajectory:
    """RK4 propagation of the reduced (bright, exciton) pair.

    Integrates the physical reduced system including the scalar phase, so
    the result matches ``exp(i omega_b T)`` times the analytic sequence
    propagator.
    """
    times, states = _integrate(
        _backend.rk4_schrodinger2, params, env, t_span, initial.as_array(), dt
    )
    _check_norm(math.sqrt(initial.norm_squared()), states)
    return TwoLevelTrajectory(times, states)


def _check_norm(norm0: float, states: np.ndarray) -> None:
    norm1 = float(np.linalg.norm(states[-1]))
    drift = abs(norm1 / norm0 - 1.0) if norm0 > 0 else norm1
    if drift > NORM_DRIFT_TOL:
        raise StepTooLargeError(
            f"norm drifted by {drift:.3e} (> {NORM_DRIFT_TOL:g}); reduce dt"
        )


def propagate_density(
    params: SystemParams,
    rates: RateParams,
    env: ControlEnvelope,
    t_span: tuple[float, float],
    initial: DensityState,
    dt: float | None = None,
) -> DensityTrajectory:
    """RK4 propagation of the dissipative density-matrix envelopes.

    The initial state must have unit trace.  Raises
    :class:`TraceDriftError` if the trace leaves 1 by more than 1e-6 and
    :class:`NegativePopulationError` if any population dips below -1e-6.
    """
    if abs(initial.trace() - 1.0) > 1e-9:
        raise DomainError(f"initial trace must be 1, got {initial.trace()!r}")
    times, states = _integrate(
        _backend.rk4_density,
        params,
        env,
        t_span,
        initial.as_array(),
        dt,
        extra=(rates.gamma11, rates.gamma22, rates.gamma01, rates.gamma02,
               rates.gamma12),
    )
    trace = states[:, :3].real.sum(axis=1)
    worst = float(np.max(np.abs(trace - 1.0)))
    if worst > TRACE_DRIFT_TOL:
        raise TraceDriftError(f"trace drifted by {worst:.3e} (> {TRACE_DRIFT_TOL:g})")
    low = float(states[:, :3].real.min())
    if low < -POPULATION_TOL:
        raise NegativePopulationError(
            f"population reached {low:.3e} (< -{POPULATION_TOL:g})"
        )
    return DensityTrajectory(times, states)
