"""qdpulse: design and simulation of fast biexciton-preparation pulses.

Designers for constant, hyperbolic-secant and minimum-time on-off-on
drives of the two-photon ground-to-biexciton transition in a quantum dot,
exact SU(2) propagators for piecewise-constant controls, RK4 simulation of
the coherent and dissipative dynamics, and a bounded optimal-control scan
that verifies the minimum-time claim numerically.
"""

from ._backend import BACKEND
from .design import (
    ConstantDesign,
    OnOffOnDesign,
    SechDesign,
    SignVariant,
    THRESHOLD_RATIO,
    design_constant,
    design_on_off_on,
    design_sech,
    min_time_curve,
    sech_final_amplitude,
    transcendental_residual,
)
from .dynamics import (
    DensityState,
    DensityTrajectory,
    RateParams,
    TwoLevelTrajectory,
    UnitaryTrajectory,
    biexciton_fidelity,
    propagate_density,
    propagate_three_level,
    propagate_two_level,
)
from .envelopes import Constant, ControlEnvelope, Piecewise, Sampled, Sech
from .errors import (
    BelowThresholdError,
    DomainError,
    NegativePopulationError,
    NoFeasibleTimeError,
    NonUnitaryError,
    NoRootError,
    NumericalError,
    PoleProximityError,
    QdPulseError,
    StepTooLargeError,
    TraceDriftError,
)
from .model import (
    PulseSegment,
    PulseSequence,
    SystemParams,
    ThreeLevelState,
    TwoLevelState,
    dressed_axis,
    lift_from_two_level,
    phase_condition_residual,
    reduce_to_two_level,
    three_level_hamiltonian,
)
from .optcontrol import (
    ControlGrid,
    OptimizeOutcome,
    ScanPoint,
    ScanResult,
    coincidence_report,
    objective_and_gradient,
    optimize_control,
    scan_min_time,
)
from .propagators import (
    Su2Propagator,
    compose,
    off_propagator,
    on_propagator,
    onoffon_coefficients,
    sequence_propagator,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BelowThresholdError",
    "Constant",
    "ConstantDesign",
    "ControlEnvelope",
    "ControlGrid",
    "DensityState",
    "DensityTrajectory",
    "DomainError",
    "NegativePopulationError",
    "NoFeasibleTimeError",
    "NonUnitaryError",
    "NoRootError",
    "NumericalError",
    "OnOffOnDesign",
    "OptimizeOutcome",
    "Piecewise",
    "PoleProximityError",
    "PulseSegment",
    "PulseSequence",
    "QdPulseError",
    "RateParams",
    "Sampled",
    "ScanPoint",
    "ScanResult",
    "Sech",
    "SechDesign",
    "SignVariant",
    "StepTooLargeError",
    "Su2Propagator",
    "SystemParams",
    "THRESHOLD_RATIO",
    "ThreeLevelState",
    "TraceDriftError",
    "TwoLevelState",
    "TwoLevelTrajectory",
    "UnitaryTrajectory",
    "biexciton_fidelity",
    "coincidence_report",
    "compose",
    "design_constant",
    "design_on_off_on",
    "design_sech",
    "dressed_axis",
    "lift_from_two_level",
    "min_time_curve",
    "objective_and_gradient",
    "off_propagator",
    "on_propagator",
    "onoffon_coefficients",
    "optimize_control",
    "phase_condition_residual",
    "propagate_density",
    "propagate_three_level",
    "propagate_two_level",
    "reduce_to_two_level",
    "scan_min_time",
    "sech_final_amplitude",
    "sequence_propagator",
    "three_level_hamiltonian",
    "transcendental_residual",
]
