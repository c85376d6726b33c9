"""Interference of probabilities from preparation filters on classical ensembles.

Exact interval-measure computation of how filter perturbations deform the
formula of total probability into trigonometric, hyperbolic, or mixed
prediction rules, with a built-in parametric model family and seeded Monte
Carlo verification.
"""

__version__ = "0.1.0"

from .deviations import (
    DeviationReport,
    Phase,
    RegimeClass,
    born_check,
    check_double_stochastic,
    check_stochastic,
    classify,
    deviation_report,
    normalized_deviation,
    normalized_deviation_joint,
    phase,
    reconstruct_total,
    statistical_deviation,
    xi_coefficients,
)
from .ensemble import (
    DichotomicObservable,
    EnsembleModel,
    conditional,
    joint_ab,
    marginal_a,
    marginal_b,
    total_probability,
)
from .errors import (
    DegenerateDenominator,
    InterfiltError,
    ModelValidationError,
    NonFiniteLambda,
    NotDoubleStochastic,
    ParamsOutOfRange,
    PointOutsideDomain,
    ZeroConditioningEvent,
)
from .filters import AffinePiece, PiecewiseAffineMap, lifted_conditional, pushforward_joint
from .intervals import IntervalSet
from .montecarlo import MCConfig, MCEstimate, SimulationResult, compare, simulate
from .reference import (
    DECOHERENCE_ALPHA,
    XI_MAX,
    ReferenceParams,
    SweepRow,
    build_reference,
    ds_beta,
    lambda0_ds,
    lambda_closed,
    perturbation_measures,
    sweep,
    thresholds,
)
from .report import ProbabilityReport, analyze

__all__ = [
    "__version__",
    "IntervalSet",
    "DichotomicObservable",
    "EnsembleModel",
    "AffinePiece",
    "PiecewiseAffineMap",
    "Phase",
    "RegimeClass",
    "DeviationReport",
    "ProbabilityReport",
    "ReferenceParams",
    "SweepRow",
    "MCConfig",
    "MCEstimate",
    "SimulationResult",
    "InterfiltError",
    "ZeroConditioningEvent",
    "PointOutsideDomain",
    "DegenerateDenominator",
    "NonFiniteLambda",
    "NotDoubleStochastic",
    "ParamsOutOfRange",
    "ModelValidationError",
    "marginal_a",
    "marginal_b",
    "joint_ab",
    "conditional",
    "total_probability",
    "pushforward_joint",
    "lifted_conditional",
    "statistical_deviation",
    "normalized_deviation",
    "normalized_deviation_joint",
    "check_stochastic",
    "check_double_stochastic",
    "classify",
    "phase",
    "reconstruct_total",
    "born_check",
    "xi_coefficients",
    "deviation_report",
    "analyze",
    "build_reference",
    "ds_beta",
    "lambda_closed",
    "lambda0_ds",
    "thresholds",
    "perturbation_measures",
    "sweep",
    "DECOHERENCE_ALPHA",
    "XI_MAX",
    "simulate",
    "compare",
]
