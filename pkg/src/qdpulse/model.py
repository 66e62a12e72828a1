"""Domain model for two-photon biexciton preparation in a quantum dot.

The ladder ground -> exciton -> biexciton is driven by a single linearly
polarized field at the two-photon resonance.  In the rotating frame the
three-level Hamiltonian couples the ground and biexciton amplitudes to the
exciton amplitude with equal strength, so the symmetric ("bright")
combination of ground and biexciton forms a two-level system with the
exciton while the antisymmetric ("dark") combination is frozen.  All design
work happens in that two-level picture.

Everything here uses natural units: time in 1/omega_b, rates and amplitudes
in omega_b.  Physical units exist only at the CLI boundary.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Sequence

import numpy as np

from .errors import DomainError, NonUnitaryError

if TYPE_CHECKING:
    from .propagators import Su2Propagator

SQRT2 = math.sqrt(2.0)

#: max |U^dag U - I| above which a propagator is rejected as non-unitary
UNITARITY_TOL = 1e-9


def dressed_axis(omega_b: float, amplitude: float) -> tuple[float, float, float]:
    """Dressed frequency and rotation-axis components for a constant drive.

    For a constant Rabi amplitude the two-level generator is
    ``-(amplitude/sqrt(2)) * sigma_x + omega_b * sigma_z``; this returns
    ``(omega, n_x, n_z)`` with ``omega = sqrt(omega_b^2 + amplitude^2/2)``,
    ``n_x = -amplitude / (sqrt(2) omega)`` and ``n_z = omega_b / omega``.
    """
    omega = math.sqrt(omega_b * omega_b + amplitude * amplitude / 2.0)
    return omega, -amplitude / (SQRT2 * omega), omega_b / omega


@dataclass(frozen=True)
class SystemParams:
    """Quantum-dot system constants.

    Parameters
    ----------
    omega_b:
        Biexciton frequency shift (a quarter of the biexciton binding
        energy over hbar), in rad/time.  Sets the natural time unit.
    omega_max:
        Maximum available Rabi amplitude, in rad/time.
    """

    omega_b: float
    omega_max: float = 0.0

    def __post_init__(self) -> None:
        if not self.omega_b > 0:
            raise DomainError(f"omega_b must be positive, got {self.omega_b}")
        if self.omega_max < 0:
            raise DomainError(f"omega_max must be >= 0, got {self.omega_max}")

    @property
    def omega(self) -> float:
        """Dressed frequency at full drive amplitude."""
        return dressed_axis(self.omega_b, self.omega_max)[0]

    @property
    def n_x(self) -> float:
        return dressed_axis(self.omega_b, self.omega_max)[1]

    @property
    def n_z(self) -> float:
        return dressed_axis(self.omega_b, self.omega_max)[2]


@dataclass(frozen=True)
class PulseSegment:
    """A constant-amplitude stretch of the control: (amplitude, duration)."""

    amplitude: float
    duration: float

    def __post_init__(self) -> None:
        if self.amplitude < 0:
            raise DomainError(f"segment amplitude must be >= 0, got {self.amplitude}")
        if self.duration < 0:
            raise DomainError(f"segment duration must be >= 0, got {self.duration}")


@dataclass(frozen=True)
class PulseSequence:
    """Ordered piecewise-constant control, first segment starting at t=0."""

    segments: tuple[PulseSegment, ...]

    def __init__(self, segments: Sequence[PulseSegment]) -> None:
        object.__setattr__(self, "segments", tuple(segments))

    def __iter__(self) -> Iterator[PulseSegment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def total_duration(self) -> float:
        return sum(seg.duration for seg in self.segments)

    def amplitude_at(self, t: float) -> float:
        """Amplitude of the segment containing ``t``.

        Segments occupy left-closed, right-open intervals; outside
        ``[0, total_duration)`` the control is off.
        """
        if t < 0:
            return 0.0
        edge = 0.0
        for seg in self.segments:
            edge += seg.duration
            if t < edge:
                return seg.amplitude
        return 0.0

    def switch_times(self) -> list[float]:
        """Cumulative segment edges, starting at 0.0."""
        edges = [0.0]
        for seg in self.segments:
            edges.append(edges[-1] + seg.duration)
        return edges

    def validate_against(self, params: SystemParams, tol: float = 1e-12) -> None:
        """Raise if any segment exceeds the amplitude bound of ``params``."""
        for i, seg in enumerate(self.segments):
            if seg.amplitude > params.omega_max + tol:
                raise DomainError(
                    f"segment {i} amplitude {seg.amplitude} exceeds bound "
                    f"{params.omega_max}"
                )


@dataclass(frozen=True)
class ThreeLevelState:
    """Rotating-frame amplitudes of ground, exciton and biexciton."""

    c0: complex
    c1: complex
    c2: complex

    @classmethod
    def ground(cls) -> "ThreeLevelState":
        return cls(1.0 + 0j, 0j, 0j)

    def norm(self) -> float:
        return math.sqrt(abs(self.c0) ** 2 + abs(self.c1) ** 2 + abs(self.c2) ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1, self.c2], dtype=complex)


@dataclass(frozen=True)
class TwoLevelState:
    """Reduced state: bright combination of ground/biexciton plus exciton.

    With the system starting in the ground state the pair is normalized to
    ``|bright|^2 + |exciton|^2 = 1/2`` (the dark combination carries the
    other half).
    """

    bright: complex
    exciton: complex

    def norm_squared(self) -> float:
        return abs(self.bright) ** 2 + abs(self.exciton) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.bright, self.exciton], dtype=complex)


def three_level_hamiltonian(params: SystemParams, omega_rabi: float) -> np.ndarray:
    """Rotating-frame Hamiltonian (over hbar) at two-photon resonance.

    Zero diagonal except the exciton entry ``-2*omega_b``; the drive couples
    ground<->exciton and exciton<->biexciton with ``-omega_rabi/2``.
    """
    half = omega_rabi / 2.0
    return np.array(
        [
            [0.0, -half, 0.0],
            [-half, -2.0 * params.omega_b, -half],
            [0.0, -half, 0.0],
        ],
        dtype=complex,
    )


def reduce_to_two_level(state: ThreeLevelState) -> tuple[TwoLevelState, complex]:
    """Split a three-level state into the driven pair and the dark amplitude.

    Returns ``(TwoLevelState, dark)`` with ``bright = (c2 + c0)/sqrt(2)``,
    ``exciton = c1`` and ``dark = (c2 - c0)/sqrt(2)``.  The dark amplitude is
    a constant of motion for any drive.
    """
    bright = (state.c2 + state.c0) / SQRT2
    dark = (state.c2 - state.c0) / SQRT2
    return TwoLevelState(bright, state.c1), dark


def lift_from_two_level(two: TwoLevelState, dark: complex) -> ThreeLevelState:
    """Inverse of :func:`reduce_to_two_level`."""
    c0 = (two.bright - dark) / SQRT2
    c2 = (two.bright + dark) / SQRT2
    return ThreeLevelState(c0, two.exciton, c2)


def phase_condition_residual(U: "Su2Propagator", T: float, params: SystemParams) -> float:
    """Distance of a two-level propagator from the pi-phase target.

    ``U`` is the propagator of the traceless two-level generator over a
    pulse of duration ``T``; the scalar phase ``exp(i omega_b T)`` that was
    factored out of the full evolution is reapplied here.  The target is a
    propagator that returns the bright amplitude to its start with a pi
    phase, i.e. first column ``(-1, 0)`` after the global phase; the second
    diagonal element is unconstrained.  Returns
    ``|exp(i omega_b T) U00 + 1|^2 + |U01|^2`` (zero exactly on target).

    Raises :class:`NonUnitaryError` if ``U`` is not unitary within 1e-9.
    """
    defect = U.unitarity_defect()
    if defect > UNITARITY_TOL:
        raise NonUnitaryError(f"propagator unitarity defect {defect:.3e} exceeds 1e-09")
    m = U.matrix()
    phased = cmath.exp(1j * params.omega_b * T) * m[0, 0]
    return abs(phased + 1.0) ** 2 + abs(m[0, 1]) ** 2
