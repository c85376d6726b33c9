"""Dichotomic observables on [0, 1) and the filtered-ensemble model.

The sample space is [0, 1) with the uniform (Lebesgue) measure. Two 0/1
observables ``a`` and ``b`` are encoded by the interval sets where they
equal one, and two filters act on the conditioning events ``{b = 0}`` and
``{b = 1}``. All probabilities are computed analytically from endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ModelValidationError, ZeroConditioningEvent
from .filters import PiecewiseAffineMap
from .intervals import IntervalSet


@dataclass(frozen=True)
class DichotomicObservable:
    """0/1-valued observable; ``ones`` is the event ``{value = 1}``."""

    ones: IntervalSet

    def event(self, value: int) -> IntervalSet:
        if value == 1:
            return self.ones
        if value == 0:
            return self.ones.complement()
        raise ValueError(f"dichotomic observable has no value {value}")

    def __call__(self, x: float) -> int:
        return 1 if self.ones.contains(x) else 0


@dataclass(frozen=True)
class EnsembleModel:
    """Observables ``a``, ``b`` plus one filter per conditioning event.

    Construction enforces the structural invariants: each filter's domain is
    exactly its conditioning event, both conditioning events have positive
    probability, and both filters validate clean.
    """

    a: DichotomicObservable
    b: DichotomicObservable
    g0: PiecewiseAffineMap
    g1: PiecewiseAffineMap

    def __post_init__(self):
        problems: list[str] = []
        pb1 = self.b.ones.measure
        if not 0.0 < pb1 < 1.0:
            problems.append(f"P(b=1) = {pb1} must be strictly between 0 and 1")
        for i, g in ((0, self.g0), (1, self.g1)):
            expected = self.b.event(i)
            if g.domain != expected:
                problems.append(
                    f"g{i} domain {g.domain} differs from the event {{b={i}}} = {expected}"
                )
            for v in g.validate():
                problems.append(f"g{i}: {v}")
        if problems:
            raise ModelValidationError(problems)


def marginal_b(model: EnsembleModel) -> np.ndarray:
    """``(P(b=0), P(b=1))`` computed directly from the event sets."""
    return np.array([model.b.event(0).measure, model.b.event(1).measure])


def joint_ab(model: EnsembleModel) -> np.ndarray:
    """Unperturbed joint ``p[i, j] = P(a = j, b = i)``; entries sum to 1."""
    p = np.empty((2, 2))
    for i in (0, 1):
        b_event = model.b.event(i)
        for j in (0, 1):
            p[i, j] = model.a.event(j).intersect(b_event).measure
    return p


def conditional(joint: np.ndarray, marginal_b: np.ndarray) -> np.ndarray:
    """Bayes conditionals ``p[i, j] / P(b = i)``; each row sums to 1."""
    for i in (0, 1):
        if marginal_b[i] == 0.0:
            raise ZeroConditioningEvent(i)
    return np.asarray(joint) / np.asarray(marginal_b)[:, None]


def total_probability(marginal_b: np.ndarray, cond: np.ndarray) -> np.ndarray:
    """Mixture rule ``p_j = sum_i P(b=i) · cond[i, j]``."""
    return np.asarray(marginal_b) @ np.asarray(cond)


def marginal_a(model: EnsembleModel) -> np.ndarray:
    """``(P(a=0), P(a=1))`` measured directly, bypassing any mixture rule."""
    return np.array([model.a.event(0).measure, model.a.event(1).measure])
