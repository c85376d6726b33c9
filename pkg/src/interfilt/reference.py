"""Built-in two-parameter model family with closed-form deviations.

The family fixes ``b = 1`` on [0, 1/3) and ``a = 1`` on [1/4, 3/4), and
perturbs each conditioning event with a two-piece filter:

    g1 on [0, 1/3):  [0, alpha) -> [0, 1/4),   [alpha, 1/3) -> [1/4, 1/3)
    g0 on [1/3, 1):  [1/3, beta) -> [1/3, 3/4), [beta, 1) -> [3/4, 1)

with 0 < alpha < 1/3 and 1/3 < beta < 1. Varying the cut points sweeps the
prediction rule from conventional through trigonometric to hyperbolic; the
filtered conditional matrix is double stochastic exactly on the line
beta = 1/3 + 2·alpha, where the two deviation coefficients are opposite and
closed forms for thresholds and the decoherence point are available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .deviations import RegimeClass, classify, phase
from .ensemble import DichotomicObservable, EnsembleModel
from .errors import ParamsOutOfRange
from .filters import PiecewiseAffineMap
from .intervals import IntervalSet

#: Parameter value at which perturbations compensate exactly (lambda0 = 0
#: on the double-stochastic line despite nonzero perturbation).
DECOHERENCE_ALPHA = 1.0 / 6.0

#: Largest attainable perturbation asymmetry on the double-stochastic line
#: inside the trigonometric window, reached at both window edges.
XI_MAX = math.sqrt(2.0) / 9.0


@dataclass(frozen=True)
class ReferenceParams:
    """Cut points of the two filters; open-interval bounds are enforced."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0 / 3.0:
            raise ParamsOutOfRange(f"alpha = {self.alpha} outside (0, 1/3)")
        if not 1.0 / 3.0 < self.beta < 1.0:
            raise ParamsOutOfRange(f"beta = {self.beta} outside (1/3, 1)")


def ds_beta(alpha: float) -> float:
    """The beta that makes the filtered conditional matrix double stochastic."""
    if not 0.0 < alpha < 1.0 / 3.0:
        raise ParamsOutOfRange(f"alpha = {alpha} outside (0, 1/3)")
    return 1.0 / 3.0 + 2.0 * alpha


def build_reference(params: ReferenceParams) -> EnsembleModel:
    """Construct the family member for given cut points."""
    third = 1.0 / 3.0
    b = DichotomicObservable(IntervalSet(((0.0, third),)))
    a = DichotomicObservable(IntervalSet(((0.25, 0.75),)))
    g1 = PiecewiseAffineMap.from_pieces(
        [((0.0, params.alpha), (0.0, 0.25)), ((params.alpha, third), (0.25, third))]
    )
    g0 = PiecewiseAffineMap.from_pieces(
        [((third, params.beta), (third, 0.75)), ((params.beta, 1.0), (0.75, 1.0))]
    )
    return EnsembleModel(a=a, b=b, g0=g0, g1=g1)


def lambda_closed(params: ReferenceParams) -> np.ndarray:
    """Closed-form deviation pair for arbitrary valid cut points.

    lambda0 = (beta − alpha − 1/2) / (2 sqrt(alpha (1 − beta)))
    lambda1 = (1/2 + alpha − beta) / (2 sqrt((beta − 1/3)(1/3 − alpha)))
    """
    al, be = params.alpha, params.beta
    l0 = (be - al - 0.5) / (2.0 * math.sqrt(al * (1.0 - be)))
    l1 = (0.5 + al - be) / (2.0 * math.sqrt((be - 1.0 / 3.0) * (1.0 / 3.0 - al)))
    return np.array([l0, l1])


def lambda0_ds(alpha: float) -> float:
    """First deviation coefficient along the double-stochastic line.

    lambda0 = (alpha − 1/6) / (2 sqrt(alpha (2/3 − 2 alpha))); strictly
    increasing in alpha, diverging at both ends of (0, 1/3), with its only
    zero at alpha = 1/6 and |lambda0| = 1 at the two thresholds.
    """
    if not 0.0 < alpha < 1.0 / 3.0:
        raise ParamsOutOfRange(f"alpha = {alpha} outside (0, 1/3)")
    return (alpha - 1.0 / 6.0) / (2.0 * math.sqrt(alpha * (2.0 / 3.0 - 2.0 * alpha)))


def thresholds() -> tuple[float, float]:
    """Cut points where |lambda0| = 1 on the double-stochastic line.

    Returns ``(alpha_minus, alpha_plus) = ((3 − 2√2)/18, (3 + 2√2)/18)``,
    the roots of 324 α² − 108 α + 1 = 0. Below the first the rule is
    hyperbolic with lambda0 < −1, between them trigonometric, above the
    second hyperbolic with lambda0 > 1.
    """
    r = 2.0 * math.sqrt(2.0)
    return ((3.0 - r) / 18.0, (3.0 + r) / 18.0)


def perturbation_measures(params: ReferenceParams) -> tuple[float, float, float]:
    """Per-filter perturbation sizes and their asymmetry.

    pi0 = 1/4 − alpha and pi1 = 3/4 − beta measure how far each filter
    moves the ``a``-cut inside its conditioning event; the asymmetry
    |pi0 − pi1| reduces to |alpha − 1/6| on the double-stochastic line and
    vanishes exactly at the decoherence point.
    """
    pi0 = 0.25 - params.alpha
    pi1 = 0.75 - params.beta
    return pi0, pi1, abs(pi0 - pi1)


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    beta: float
    lambda0: float
    lambda1: float
    regime: RegimeClass
    phase_kind: str
    theta0: float
    pi0: float
    pi1: float
    xi_asym: float


def grid_values(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid ``start, start+step, ..., stop`` inside (0, 1/3)."""
    if step <= 0.0:
        raise ParamsOutOfRange(f"step = {step} must be positive")
    if not (0.0 < start <= stop < 1.0 / 3.0):
        raise ParamsOutOfRange(
            f"grid [{start}, {stop}] must lie strictly inside (0, 1/3)"
        )
    n = int(round((stop - start) / step)) + 1
    values = [start + k * step for k in range(n)]
    return [v for v in values if 0.0 < v < 1.0 / 3.0]

def sweep(
    start: float,
    stop: float,
    step: float,
    ds: bool = True,
    fixed_beta: float | None = None,
    tol: float = 1e-9,
) -> list[SweepRow]:
    """Tabulate the family along an alpha grid, in ascending alpha order.

    With ``ds=True`` beta follows the double-stochastic line; otherwise
    ``fixed_beta`` is used for every row.
    """
    if not ds and fixed_beta is None:
        raise ParamsOutOfRange("fixed_beta is required when ds is false")
    rows: list[SweepRow] = []
    for alpha in grid_values(start, stop, step):
        beta = ds_beta(alpha) if ds else float(fixed_beta)
        params = ReferenceParams(alpha, beta)
        lam = lambda_closed(params)
        pi0, pi1, xi_asym = perturbation_measures(params)
        ph = phase(lam[0])
        rows.append(
            SweepRow(
                alpha=alpha,
                beta=beta,
                lambda0=float(lam[0]),
                lambda1=float(lam[1]),
                regime=classify(lam, tol),
                phase_kind=ph.kind,
                theta0=ph.theta,
                pi0=pi0,
                pi1=pi1,
                xi_asym=xi_asym,
            )
        )
    return rows
