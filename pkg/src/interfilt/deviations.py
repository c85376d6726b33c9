"""Deviation calculus for prediction rules perturbed by filtering.

When the conditional probabilities of ``a`` on the raw sub-ensembles differ
from those on the filtered sub-ensembles, the mixture (total-probability)
prediction picks up an additive correction

    p_j = p0 q0j + p1 q1j + 2 sqrt(p0 p1 q0j q1j) · lambda_j

where ``p_i`` are the ``b``-marginals and ``q_ij`` the filtered
conditionals. The dimensionless coefficient ``lambda_j`` is the normalized
statistical deviation; its magnitude decides whether the rule looks
conventional (lambda = 0), trigonometric (|lambda| <= 1, lambda = cos θ),
hyperbolic (|lambda| >= 1, lambda = ±cosh θ), or mixed. This module
computes the coefficients, classifies the regime, extracts phases, and
cross-checks the trigonometric case against a complex-amplitude
computation.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DegenerateDenominator, NonFiniteLambda, NotDoubleStochastic


class RegimeClass(enum.Enum):
    """Classification of a pair of normalized deviations."""

    CONVENTIONAL = "Conventional"
    TRIGONOMETRIC = "Trigonometric"
    HYPERBOLIC = "Hyperbolic"
    HYPER_TRIGONOMETRIC = "HyperTrigonometric"
    BOUNDARY = "Boundary"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Phase:
    """Canonical parameterization of one normalized deviation.

    Circular: lambda = sign·cos(theta) with sign = +1 and theta in [0, π].
    Hyperbolic: lambda = sign·cosh(theta) with theta >= 0 and sign = ±1
    (kept separate because cosh is even).
    """

    kind: Literal["circular", "hyperbolic"]
    theta: float
    sign: int


@dataclass(frozen=True, eq=False)
class DeviationReport:
    delta: np.ndarray
    lam: np.ndarray
    regime: RegimeClass
    phases: tuple[Phase, Phase]


def _denominators(p_b, q_cond) -> np.ndarray:
    prod = p_b[0] * p_b[1] * q_cond[0] * q_cond[1]
    return np.array([2.0 * math.sqrt(prod[0]), 2.0 * math.sqrt(prod[1])])


def statistical_deviation(p_b, p_cond, q_cond) -> np.ndarray:
    """Additive gap ``delta_j`` between the raw and filtered mixture rules."""
    p_b = np.asarray(p_b)
    diff = np.asarray(p_cond) - np.asarray(q_cond)
    return p_b @ diff


def normalized_deviation(p_b, p_cond, q_cond) -> np.ndarray:
    """``lambda_j`` from marginals and the two conditional matrices.

    lambda_j = [p0 (p0j − q0j) + p1 (p1j − q1j)] / (2 sqrt(p0 p1 q0j q1j)).

    Raises :class:`DegenerateDenominator` when a filtered conditional entry
    or a marginal vanishes.
    """
    p_b = np.asarray(p_b)
    q_cond = np.asarray(q_cond)
    denom = _denominators(p_b, q_cond)
    for j in (0, 1):
        if denom[j] == 0.0:
            raise DegenerateDenominator(j)
    return statistical_deviation(p_b, p_cond, q_cond) / denom


def normalized_deviation_joint(p_joint, q_joint) -> np.ndarray:
    """``lambda_j`` directly from the two joint matrices.

    lambda_j = [(p0j − q0j) + (p1j − q1j)] / (2 sqrt(q0j q1j)), joints in
    place of conditionals. Algebraically identical to
    :func:`normalized_deviation` whenever both are defined.
    """
    p_joint = np.asarray(p_joint)
    q_joint = np.asarray(q_joint)
    out = np.empty(2)
    for j in (0, 1):
        prod = q_joint[0, j] * q_joint[1, j]
        if prod == 0.0:
            raise DegenerateDenominator(j)
        num = (p_joint[0, j] - q_joint[0, j]) + (p_joint[1, j] - q_joint[1, j])
        out[j] = num / (2.0 * math.sqrt(prod))
    return out


def check_stochastic(q_cond, tol: float = 1e-12) -> bool:
    """True iff both rows sum to 1 within ``tol``."""
    q = np.asarray(q_cond)
    return bool(np.all(np.abs(q.sum(axis=1) - 1.0) <= tol))


def check_double_stochastic(q_cond, tol: float = 1e-12) -> bool:
    """True iff both rows and both columns sum to 1 within ``tol``."""
    q = np.asarray(q_cond)
    return check_stochastic(q, tol) and bool(np.all(np.abs(q.sum(axis=0) - 1.0) <= tol))


def classify(lam, tol: float = 1e-9) -> RegimeClass:
    """Total classification of a deviation pair.

    Conventional when both coefficients are ~0; Boundary when either sits
    within ``tol`` of magnitude 1 (the threshold is not silently assigned
    to a side); otherwise Trigonometric / Hyperbolic / HyperTrigonometric
    according to whether the magnitudes fall below or above 1.
    """
    l0, l1 = float(lam[0]), float(lam[1])
    if not (math.isfinite(l0) and math.isfinite(l1)):
        raise NonFiniteLambda((l0, l1))
    m0, m1 = abs(l0), abs(l1)
    if m0 <= tol and m1 <= tol:
        return RegimeClass.CONVENTIONAL
    if (1.0 - tol) <= m0 <= (1.0 + tol) or (1.0 - tol) <= m1 <= (1.0 + tol):
        return RegimeClass.BOUNDARY
    below0, below1 = m0 < 1.0, m1 < 1.0
    if below0 and below1:
        return RegimeClass.TRIGONOMETRIC
    if not below0 and not below1:
        return RegimeClass.HYPERBOLIC
    return RegimeClass.HYPER_TRIGONOMETRIC


def phase(lam: float) -> Phase:
    """Canonical phase of one coefficient: arccos inside [-1, 1], arccosh outside."""
    lam = float(lam)
    if not math.isfinite(lam):
        raise NonFiniteLambda(lam)
    if abs(lam) <= 1.0:
        return Phase("circular", math.acos(lam), 1)
    return Phase("hyperbolic", math.acosh(abs(lam)), 1 if lam > 0 else -1)


def reconstruct_total(p_b, q_cond, lam) -> np.ndarray:
    """Perturbed mixture rule: base mixture plus the interference term.

    p_j = p0 q0j + p1 q1j + 2 sqrt(p0 p1 q0j q1j) · lambda_j.
    With lambda = (0, 0) this is the plain formula of total probability.
    """
    p_b = np.asarray(p_b)
    q_cond = np.asarray(q_cond)
    base = p_b @ q_cond
    return base + _denominators(p_b, q_cond) * np.asarray(lam)


def born_check(p_b, q_cond, theta: float, tol: float = 1e-9) -> np.ndarray:
    """Squared-amplitude prediction for a double-stochastic conditional matrix.

    Builds the two-dimensional complex state with amplitudes sqrt(p0) and
    e^{iθ} sqrt(p1) over the intermediate basis, expands that basis with
    entries sqrt(q_ij) (second column carrying the sign flip that makes the
    change of basis unitary), and returns the squared projections. Equals
    :func:`reconstruct_total` with lambda = (cos θ, −cos θ).
    """
    q = np.asarray(q_cond, dtype=float)
    if not check_double_stochastic(q, tol):
        raise NotDoubleStochastic(f"column sums {q.sum(axis=0)} differ from 1 beyond {tol}")
    w = cmath.exp(1j * theta)
    c0 = math.sqrt(p_b[0] * q[0, 0]) + w * math.sqrt(p_b[1] * q[1, 0])
    c1 = -math.sqrt(p_b[0] * q[0, 1]) + w * math.sqrt(p_b[1] * q[1, 1])
    return np.array([abs(c0) ** 2, abs(c1) ** 2])


def xi_coefficients(p_joint, q_joint, p_b, q_cond) -> np.ndarray:
    """Per-sub-ensemble shares ``xi[i, j]`` of the normalized deviation.

    Each conditional perturbation is expressed in units of the interference
    denominator: xi_ij = (p_ij − q_ij) / (2 sqrt(p0 p1 q0j q1j)) with joint
    entries in the numerator. Column sums reproduce lambda_j; a zero column
    sum means the two filters compensate exactly for outcome j.
    """
    p_joint = np.asarray(p_joint)
    q_joint = np.asarray(q_joint)
    denom = _denominators(np.asarray(p_b), np.asarray(q_cond))
    for j in (0, 1):
        if denom[j] == 0.0:
            raise DegenerateDenominator(j)
    return (p_joint - q_joint) / denom[None, :]


def deviation_report(p_b, p_cond, q_cond, tol: float = 1e-9) -> DeviationReport:
    """Bundle delta, lambda, regime, and phases for one model."""
    delta = statistical_deviation(p_b, p_cond, q_cond)
    lam = normalized_deviation(p_b, p_cond, q_cond)
    return DeviationReport(
        delta=delta,
        lam=lam,
        regime=classify(lam, tol),
        phases=(phase(lam[0]), phase(lam[1])),
    )
