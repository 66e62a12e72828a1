"""Exact SU(2) propagators for piecewise-constant drives.

A constant segment rotates the two-level state about a fixed axis, so its
propagator has the closed form ``cos(omega tau) I - i sin(omega tau)
(n_x sigma_x + n_z sigma_z)``.  Products of segments are composed directly
in Pauli coefficients, which is the representation the on-off-on case
analysis works in.

Convention: propagators act in the traceless frame (the scalar phase
``exp(i omega_b T)`` of the full evolution is bookkept separately, see
:func:`qdpulse.model.phase_condition_residual`).  Time ordering is
rightmost-first: the propagator of a sequence is the product of segment
propagators with later segments multiplying on the left.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import PulseSequence, SystemParams, dressed_axis


@dataclass(frozen=True)
class Su2Propagator:
    """A 2x2 unitary stored as coefficients over {I, sigma_x, sigma_y, sigma_z}."""

    ui: complex
    ux: complex
    uy: complex
    uz: complex

    @classmethod
    def identity(cls) -> "Su2Propagator":
        return cls(1.0 + 0j, 0j, 0j, 0j)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "Su2Propagator":
        m = np.asarray(m, dtype=complex)
        return cls(
            (m[0, 0] + m[1, 1]) / 2.0,
            (m[0, 1] + m[1, 0]) / 2.0,
            (m[1, 0] - m[0, 1]) / 2.0j,
            (m[0, 0] - m[1, 1]) / 2.0,
        )

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.ui + self.uz, self.ux - 1j * self.uy],
                [self.ux + 1j * self.uy, self.ui - self.uz],
            ],
            dtype=complex,
        )

    def det(self) -> complex:
        return self.ui**2 - self.ux**2 - self.uy**2 - self.uz**2

    def unitarity_defect(self) -> float:
        m = self.matrix()
        return float(np.max(np.abs(m.conj().T @ m - np.eye(2))))


def _constant_propagator(omega_b: float, amplitude: float, tau: float) -> Su2Propagator:
    omega, n_x, n_z = dressed_axis(omega_b, amplitude)
    c = math.cos(omega * tau)
    s = math.sin(omega * tau)
    return Su2Propagator(c + 0j, -1j * n_x * s, 0j, -1j * n_z * s)


def on_propagator(params: SystemParams, tau: float) -> Su2Propagator:
    """Propagator of a segment at full amplitude ``params.omega_max``."""
    return _constant_propagator(params.omega_b, params.omega_max, tau)


def off_propagator(params: SystemParams, tau: float) -> Su2Propagator:
    """Propagator of a dark segment: ``diag(exp(-i omega_b tau), exp(i omega_b tau))``."""
    phase = cmath.exp(-1j * params.omega_b * tau)
    return Su2Propagator((phase + phase.conjugate()) / 2.0, 0j, 0j,
                         (phase - phase.conjugate()) / 2.0)


def compose(second: Su2Propagator, first: Su2Propagator) -> Su2Propagator:
    """Product ``second @ first`` computed in Pauli coefficients.

    Uses ``sigma_a sigma_b = delta_ab I + i eps_abc sigma_c``: the identity
    part picks up the dot product of the vector parts, the vector part the
    cross product.
    """
    a, b = second, first
    ui = a.ui * b.ui + a.ux * b.ux + a.uy * b.uy + a.uz * b.uz
    ux = a.ui * b.ux + b.ui * a.ux + 1j * (a.uy * b.uz - a.uz * b.uy)
    uy = a.ui * b.uy + b.ui * a.uy + 1j * (a.uz * b.ux - a.ux * b.uz)
    uz = a.ui * b.uz + b.ui * a.uz + 1j * (a.ux * b.uy - a.uy * b.ux)
    return Su2Propagator(ui, ux, uy, uz)


def sequence_propagator(params: SystemParams, seq: PulseSequence) -> Su2Propagator:
    """Propagator of a whole piecewise-constant sequence.

    Later segments multiply on the left.  Each segment uses the exact
    constant-drive propagator with its own dressed axis, so amplitudes
    other than 0 and ``omega_max`` are handled exactly as well.
    """
    u = Su2Propagator.identity()
    for seg in seq:
        u = compose(_constant_propagator(params.omega_b, seg.amplitude, seg.duration), u)
    return u


def onoffon_coefficients(
    params: SystemParams, tau1: float, tau2: float, tau3: float
) -> Su2Propagator:
    """Closed-form Pauli coefficients of an on-off-on sequence.

    ``ui`` comes out real and ``ux, uy, uz`` purely imaginary for real
    durations; agrees with :func:`sequence_propagator` on the same segments
    to machine precision.
    """
    omega_b = params.omega_b
    omega, n_x, n_z = dressed_axis(omega_b, params.omega_max)
    c2 = math.cos(omega_b * tau2)
    s2 = math.sin(omega_b * tau2)
    s13 = math.sin(omega * (tau1 + tau3))
    c13 = math.cos(omega * (tau1 + tau3))
    s31 = math.sin(omega * (tau3 - tau1))
    c31 = math.cos(omega * (tau3 - tau1))
    s1 = math.sin(omega * tau1)
    s3 = math.sin(omega * tau3)

    ui = c2 * c13 - n_z * s2 * s13
    ux = -1j * n_x * c2 * s13 + 2j * n_x * n_z * s1 * s2 * s3
    uy = 1j * n_x * s2 * s31
    uz = (-1j * n_z * c2 * s13 - 1j * s2 * c31
          + 2j * n_z * n_z * s1 * s2 * s3)
    return Su2Propagator(ui + 0j, ux, uy, uz)
