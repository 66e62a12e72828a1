"""Exception hierarchy.

Two families matter for the CLI exit codes: :class:`DomainError` (bad or
infeasible inputs, exit code 2) and :class:`NumericalError` (a computation
that started but failed to meet its accuracy or convergence contract,
exit code 3).
"""


class QdPulseError(Exception):
    """Base class for all package errors."""


class DomainError(QdPulseError):
    """Invalid or infeasible problem data."""


class NumericalError(QdPulseError):
    """A numerical procedure violated its accuracy/convergence contract."""


class BelowThresholdError(DomainError):
    """Maximum amplitude too small for an on-off-on sequence faster than
    the constant pulse."""


class NoRootError(DomainError):
    """A root search found no solution in the scanned bracket."""


class PoleProximityError(DomainError):
    """Tangent argument too close to a pole; the residual is meaningless."""


class NonUnitaryError(DomainError):
    """A propagator failed its unitarity check."""


class StepTooLargeError(NumericalError):
    """Integrator norm drift exceeded tolerance; decrease the step."""


class TraceDriftError(NumericalError):
    """Density-matrix trace drifted beyond tolerance."""


class NegativePopulationError(NumericalError):
    """A population went negative beyond tolerance."""


class NoFeasibleTimeError(NumericalError):
    """No duration in the scanned range met the error threshold."""
