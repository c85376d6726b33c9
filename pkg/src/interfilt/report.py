"""Full analytic report for one ensemble model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ensemble as ens
from .deviations import Phase, RegimeClass, deviation_report, xi_coefficients
from .ensemble import EnsembleModel
from .filters import lifted_conditional, pushforward_joint


@dataclass(frozen=True, eq=False)
class ProbabilityReport:
    """Every probability and deviation quantity for one model.

    Matrix indices are ``[i, j]`` with ``i`` the ``b``-value and ``j`` the
    ``a``-value; ``p_*`` refer to the unfiltered ensemble, ``q_*`` to the
    filtered ensembles.
    """

    p_b: np.ndarray
    p_joint: np.ndarray
    p_cond: np.ndarray
    q_joint: np.ndarray
    q_cond: np.ndarray
    p_a: np.ndarray
    delta: np.ndarray
    lam: np.ndarray
    xi: np.ndarray
    regime: RegimeClass
    phases: tuple[Phase, Phase]

    def to_dict(self) -> dict:
        return {
            "p_b": self.p_b.tolist(),
            "p_joint": self.p_joint.tolist(),
            "p_cond": self.p_cond.tolist(),
            "q_joint": self.q_joint.tolist(),
            "q_cond": self.q_cond.tolist(),
            "p_a": self.p_a.tolist(),
            "delta": self.delta.tolist(),
            "lambda": self.lam.tolist(),
            "xi": self.xi.tolist(),
            "regime": str(self.regime),
            "phases": [
                {"kind": ph.kind, "theta": ph.theta, "sign": ph.sign} for ph in self.phases
            ],
        }


def analyze(model: EnsembleModel, tol: float = 1e-9) -> ProbabilityReport:
    """Run the full analytic pipeline on a model.

    Raises :class:`~interfilt.errors.DegenerateDenominator` when the model
    leaves a normalized deviation undefined (a filtered conditional cell or
    a conditioning marginal is zero).
    """
    p_b = ens.marginal_b(model)
    p_joint = ens.joint_ab(model)
    p_cond = ens.conditional(p_joint, p_b)
    q_joint = pushforward_joint(model)
    q_cond = lifted_conditional(q_joint, p_b)
    p_a = ens.marginal_a(model)
    dev = deviation_report(p_b, p_cond, q_cond, tol)
    xi = xi_coefficients(p_joint, q_joint, p_b, q_cond)
    return ProbabilityReport(
        p_b=p_b,
        p_joint=p_joint,
        p_cond=p_cond,
        q_joint=q_joint,
        q_cond=q_cond,
        p_a=p_a,
        delta=dev.delta,
        lam=dev.lam,
        xi=xi,
        regime=dev.regime,
        phases=dev.phases,
    )
