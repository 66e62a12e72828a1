"""The three pulse designers.

* :func:`design_constant` -- the shortest constant pulse: duration
  ``pi/omega_b`` at amplitude ``sqrt(6) omega_b`` (the dressed rotation
  closes after one full turn exactly when the scalar phase reaches pi).
* :func:`design_sech` -- hyperbolic-secant pulses.  For amplitude-width
  products ``omega0 * t_p = sqrt(2) n`` the final bright amplitude has the
  closed product form evaluated by :func:`sech_final_amplitude`; the width
  is the smallest root of its phase condition.
* :func:`design_on_off_on` -- the minimum-time bang-bang sequence.  The
  middle (dark) duration solves a transcendental equation; the outer
  durations follow algebraically, in two sign variants with the outer
  segments interchanged.

An on-off-on solution exists only above the amplitude threshold
``sqrt(6) omega_b``; it always beats the constant pulse
(``T = pi/omega_b - tau2``), and approaches ``pi/(2 omega_b)`` from above
as the amplitude grows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from scipy.optimize import bisect, brentq

from .errors import BelowThresholdError, DomainError, NoRootError, PoleProximityError
from .model import PulseSegment, PulseSequence, SystemParams, dressed_axis

PI = math.pi

#: amplitude threshold (in units of omega_b) below which no on-off-on
#: sequence is faster than the constant pulse
THRESHOLD_RATIO = math.sqrt(6.0)

_POLE_GUARD = 1e-6       # exclusion distance from tangent poles, in argument
_ROOT_GRID = 10_000      # scan resolution for bracketing tau2 roots
_ROOT_XTOL = 1e-13       # bisection interval tolerance


class SignVariant(enum.Enum):
    """Which outer segment of an on-off-on sequence is the long one.

    ``UPPER`` puts the short segment first (``tau3 - tau1 = +pi/omega``),
    ``LOWER`` the long one (``tau3 - tau1 = -pi/omega``).  Both achieve the
    same fidelity in the same total time.
    """

    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class ConstantDesign:
    """A constant pulse achieving complete biexciton transfer."""

    omega0: float
    total_T: float

    def to_sequence(self) -> PulseSequence:
        return PulseSequence([PulseSegment(self.omega0, self.total_T)])


@dataclass(frozen=True)
class SechDesign:
    """A sech pulse achieving complete transfer in the infinite-time limit.

    ``omega0 * t_p = sqrt(2) n`` holds exactly; ``truncation_halfwidth`` is
    the half window (20 widths) used when the pulse is simulated, where the
    neglected tail is below 1e-8 of the peak.
    """

    n: int
    t_p: float
    omega0: float
    truncation_halfwidth: float


@dataclass(frozen=True)
class OnOffOnDesign:
    """One sign variant of the minimum-time on-off-on sequence."""

    omega0: float
    tau1: float
    tau2: float
    tau3: float
    total_T: float
    sign_variant: SignVariant
    all_roots: tuple[float, ...] = field(default=())

    def to_sequence(self) -> PulseSequence:
        return PulseSequence(
            [
                PulseSegment(self.omega0, self.tau1),
                PulseSegment(0.0, self.tau2),
                PulseSegment(self.omega0, self.tau3),
            ]
        )


def design_constant(params: SystemParams, k: int = 2) -> ConstantDesign:
    """Shortest constant pulse: ``T = pi/omega_b``, amplitude from branch ``k``.

    The off-diagonal condition forces the dressed angle ``omega T`` to a
    multiple ``k pi``, and the scalar phase fixes ``T = pi/omega_b`` with
    ``k`` even.  ``k = 2`` gives the smallest amplitude,
    ``sqrt(6) omega_b``; larger even ``k`` gives the higher-amplitude
    solutions ``sqrt(2 (k^2 - 1)) omega_b`` at the same duration.
    """
    if k < 2 or k % 2 != 0:
        raise DomainError(f"branch index must be a positive even integer, got {k}")
    omega0 = params.omega_b * math.sqrt(2.0 * (k * k - 1.0))
    return ConstantDesign(omega0=omega0, total_T=PI / params.omega_b)


def sech_final_amplitude(n: int, x: float) -> complex:
    """Final bright amplitude of a sech pulse with ``omega0 t_p = sqrt(2) n``.

    ``x = omega_b * t_p``.  Returns
    ``(-1)^n / sqrt(2) * prod_{j=0}^{n-1} (j + 1/2 + ix) / (j + 1/2 - ix)``;
    every factor is unimodular so the modulus is always ``1/sqrt(2)``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    prod = complex((-1) ** n / math.sqrt(2.0))
    for j in range(n):
        prod *= (j + 0.5 + 1j * x) / (j + 0.5 - 1j * x)
    return prod


def _sech_phase_sum(n: int, x: float) -> float:
    """Accumulated phase of the product in :func:`sech_final_amplitude`."""
    return sum(2.0 * math.atan(x / (j + 0.5)) for j in range(n))


def design_sech(params: SystemParams, n: int) -> SechDesign:
    """Design the sech pulse of index ``n``: smallest width with full transfer.

    The target ``A(final) = -1/sqrt(2)`` means the product phase must reach
    pi mod 2pi after the ``(-1)^n`` prefactor: pi for even ``n``, 2pi for
    odd ``n``.  The phase sum grows monotonically from 0 to ``n pi``, so the
    smallest positive root is solved by bracketed root finding.  For
    ``n = 1`` the phase sum stays below pi and no solution exists.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    target = PI if n % 2 == 0 else 2.0 * PI
    if n * PI <= target:
        raise NoRootError(
            f"sech design has no solution for n={n}: the reachable phase "
            f"{n}*pi never attains the target {target / PI:g}*pi"
        )
    hi = 1.0
    while _sech_phase_sum(n, hi) < target:
        hi *= 2.0
    x = brentq(lambda t: _sech_phase_sum(n, t) - target, 1e-15, hi, xtol=1e-14)
    t_p = x / params.omega_b
    return SechDesign(
        n=n,
        t_p=t_p,
        omega0=math.sqrt(2.0) * n / t_p,
        truncation_halfwidth=20.0 * t_p,
    )


def _near_tan_pole(arg: float, guard: float = _POLE_GUARD) -> bool:
    """True when ``arg`` is within ``guard`` of pi/2 + k pi."""
    return abs(math.remainder(arg - PI / 2.0, PI)) < guard


def _balance(params: SystemParams, tau2: float) -> float:
    """Signed mismatch of the middle-duration condition (zero at a design)."""
    omega_b = params.omega_b
    omega, _, n_z = dressed_axis(omega_b, params.omega_max)
    return math.tan(omega * (PI / (2.0 * omega_b) - tau2)) + n_z * math.tan(
        omega_b * tau2
    )


def transcendental_residual(params: SystemParams, tau2: float) -> float:
    """Squared mismatch of the middle-duration condition at ``tau2``.

    Defined on ``0 < tau2 < pi/(2 omega_b)``; raises
    :class:`PoleProximityError` if either tangent argument is within 1e-6
    of a pole, where the value is meaningless.
    """
    omega_b = params.omega_b
    hi = PI / (2.0 * omega_b)
    if not 0.0 < tau2 < hi:
        raise DomainError(f"tau2 must lie in (0, {hi:g}), got {tau2}")
    omega, _, _ = dressed_axis(omega_b, params.omega_max)
    if _near_tan_pole(omega * (hi - tau2)) or _near_tan_pole(omega_b * tau2):
        raise PoleProximityError(
            f"tau2={tau2:g} puts a tangent argument within {_POLE_GUARD:g} of a pole"
        )
    return _balance(params, tau2) ** 2


def _transcendental_roots(params: SystemParams) -> list[float]:
    """All roots of the middle-duration condition in ``(0, pi/(2 omega_b))``.

    The balance function has tangent poles that flip its sign without a
    root, so the interval is split at the (analytically known) poles and
    each pole-free piece is scanned on a uniform grid for sign changes,
    which are then bisected down.
    """
    omega_b = params.omega_b
    omega, _, _ = dressed_axis(omega_b, params.omega_max)
    hi = PI / (2.0 * omega_b)

    poles = []
    k = 0
    while True:
        p = hi - (PI / 2.0 + k * PI) / omega
        if p <= 0.0:
            break
        poles.append(p)
        k += 1
    edges = sorted([0.0] + poles + [hi])

    inset = 1e-9 / omega_b
    roots: list[float] = []
    for a, b in zip(edges[:-1], edges[1:]):
        lo, up = a + inset, b - inset
        if up <= lo:
            continue
        n_pts = max(8, int(_ROOT_GRID * (b - a) / hi))
        step = (up - lo) / (n_pts - 1)
        f_prev = _balance(params, lo)
        x_prev = lo
        for i in range(1, n_pts):
            x = lo + i * step
            f = _balance(params, x)
            if f_prev == 0.0:
                roots.append(x_prev)
            elif (f_prev < 0.0) != (f < 0.0):
                roots.append(
                    bisect(lambda t: _balance(params, t), x_prev, x, xtol=_ROOT_XTOL)
                )
            x_prev, f_prev = x, f
    return sorted(roots)


def _variant_durations(
    params: SystemParams, tau2: float, variant: SignVariant
) -> tuple[float, float]:
    omega_b = params.omega_b
    omega, _, _ = dressed_axis(omega_b, params.omega_max)
    half_sum = PI / (2.0 * omega_b)
    half_gap = PI / (2.0 * omega)
    if variant is SignVariant.UPPER:
        return half_sum - half_gap - tau2, half_sum + half_gap - tau2
    return half_sum + half_gap - tau2, half_sum - half_gap - tau2


def design_on_off_on(params: SystemParams) -> list[OnOffOnDesign]:
    """Minimum-time on-off-on sequence for ``params.omega_max``.

    Finds all middle-duration roots, keeps those whose outer durations are
    nonnegative, and takes the largest (shortest total time,
    ``T = pi/omega_b - tau2``).  Returns both sign variants, lower sign
    (long first segment) first.

    Raises :class:`BelowThresholdError` at or below the amplitude threshold
    ``sqrt(6) omega_b``, where no on-off-on sequence beats the constant
    pulse.
    """
    omega_b = params.omega_b
    if params.omega_max <= THRESHOLD_RATIO * omega_b:
        raise BelowThresholdError(
            f"omega_max = {params.omega_max:g} is not above the threshold "
            f"sqrt(6)*omega_b = {THRESHOLD_RATIO * omega_b:g}: an on-off-on "
            f"sequence cannot beat the constant pulse duration pi/omega_b"
        )
    roots = _transcendental_roots(params)
    feasible = [
        r for r in roots if min(_variant_durations(params, r, SignVariant.LOWER)) >= 0.0
    ]
    if not feasible:
        raise NoRootError(
            f"no feasible middle-duration root found for omega_max = "
            f"{params.omega_max:g} (roots scanned: {len(roots)})"
        )
    tau2 = max(feasible)
    total_T = PI / omega_b - tau2
    designs = []
    for variant in (SignVariant.LOWER, SignVariant.UPPER):
        tau1, tau3 = _variant_durations(params, tau2, variant)
        designs.append(
            OnOffOnDesign(
                omega0=params.omega_max,
                tau1=tau1,
                tau2=tau2,
                tau3=tau3,
                total_T=total_T,
                sign_variant=variant,
                all_roots=tuple(roots),
            )
        )
    return designs


def min_time_curve(
    omega_b: float, omega0_values: list[float]
) -> list[tuple[float, float]]:
    """Minimum on-off-on duration for each amplitude in ``omega0_values``.

    Non-increasing in the amplitude; tends to ``pi/omega_b`` at the
    threshold and to ``pi/(2 omega_b)`` for large amplitudes.  Raises
    :class:`BelowThresholdError` on the first infeasible entry.
    """
    curve = []
    for omega0 in omega0_values:
        designs = design_on_off_on(SystemParams(omega_b, omega0))
        curve.append((omega0, designs[0].total_T))
    return curve
