"""Seeded Monte Carlo estimation of every model probability.

Sampling draws uniforms on [0, 1), classifies each sample by ``b``, ``a``,
and ``a`` after the matching filter, and reduces to 8 integer cell counts.
Streams use counter-based generators keyed by (seed, stream index), so runs
are bit-reproducible for a fixed (seed, samples, streams) triple no matter
how the work is scheduled; per-stream tallies merge by integer addition in
stream order.

Probability estimates carry binomial standard errors; the interference
coefficients are estimated from the empirical joints and carry first-order
(delta-method) errors propagated through the full 8-cell multinomial
covariance. Cells that would divide by zero are flagged undefined and
excluded from comparisons instead of being imputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ensemble import EnsembleModel
from .kernels import LoweredModel, lower_model, tally_counts
from .report import ProbabilityReport

_CHUNK = 1 << 22  # samples per generator call; bounds memory, not results


@dataclass(frozen=True)
class MCConfig:
    """Simulation size and reproducibility contract."""

    seed: int
    samples: int
    streams: int = 1

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed {self.seed} outside the unsigned 64-bit range")
        if self.samples < 1:
            raise ValueError(f"samples = {self.samples} must be >= 1")
        if self.streams < 1:
            raise ValueError(f"streams = {self.streams} must be >= 1")


@dataclass(frozen=True)
class MCEstimate:
    value: float
    std_error: float
    n: int


def _stream_sizes(samples: int, streams: int) -> list[int]:
    base = samples // streams
    sizes = [base] * streams
    sizes[-1] += samples - base * streams
    return sizes


def _stream_counts(lowered: LoweredModel, seed: int, stream: int, n: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))
    counts = np.zeros(8, dtype=np.int64)
    left = n
    while left > 0:
        block = min(left, _CHUNK)
        counts += tally_counts(gen.random(block), lowered)
        left -= block
    return counts


@dataclass(frozen=True, eq=False)
class SimulationResult:
    """Empirical counterpart of :class:`~interfilt.report.ProbabilityReport`.

    ``counts[b, a, ag]`` are the raw cell tallies. Conditional rows with an
    empty conditioning event and interference coefficients with a zero
    denominator are reported as NaN with the matching ``*_defined`` flag
    cleared.
    """

    config: MCConfig
    n: int
    counts: np.ndarray
    p_b: np.ndarray
    p_b_se: np.ndarray
    p_a: np.ndarray
    p_a_se: np.ndarray
    p_joint: np.ndarray
    p_joint_se: np.ndarray
    q_joint: np.ndarray
    q_joint_se: np.ndarray
    p_cond: np.ndarray
    p_cond_se: np.ndarray
    q_cond: np.ndarray
    q_cond_se: np.ndarray
    cond_defined: np.ndarray
    lam: np.ndarray
    lam_se: np.ndarray
    lam_defined: np.ndarray

    def estimates(self) -> dict[str, MCEstimate]:
        """Flat per-quantity view; undefined entries carry NaN values.

        Conditional rows use the realized conditioning count as their
        sample size.
        """
        out: dict[str, MCEstimate] = {}
        for i in (0, 1):
            out[f"p_b[{i}]"] = MCEstimate(float(self.p_b[i]), float(self.p_b_se[i]), self.n)
        for j in (0, 1):
            out[f"p_a[{j}]"] = MCEstimate(float(self.p_a[j]), float(self.p_a_se[j]), self.n)
        for i in (0, 1):
            row_n = int(self.counts[i].sum())
            for j in (0, 1):
                out[f"p_joint[{i},{j}]"] = MCEstimate(
                    float(self.p_joint[i, j]), float(self.p_joint_se[i, j]), self.n
                )
                out[f"q_joint[{i},{j}]"] = MCEstimate(
                    float(self.q_joint[i, j]), float(self.q_joint_se[i, j]), self.n
                )
                out[f"p_cond[{i},{j}]"] = MCEstimate(
                    float(self.p_cond[i, j]), float(self.p_cond_se[i, j]), row_n
                )
                out[f"q_cond[{i},{j}]"] = MCEstimate(
                    float(self.q_cond[i, j]), float(self.q_cond_se[i, j]), row_n
                )
        for j in (0, 1):
            out[f"lambda[{j}]"] = MCEstimate(
                float(self.lam[j]), float(self.lam_se[j]), self.n
            )
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.config.seed,
            "streams": self.config.streams,
            "counts": self.counts.reshape(-1).tolist(),
            "p_b": self.p_b.tolist(),
            "p_b_se": self.p_b_se.tolist(),
            "p_a": self.p_a.tolist(),
            "p_a_se": self.p_a_se.tolist(),
            "p_joint": self.p_joint.tolist(),
            "p_joint_se": self.p_joint_se.tolist(),
            "q_joint": self.q_joint.tolist(),
            "q_joint_se": self.q_joint_se.tolist(),
            "p_cond": self.p_cond.tolist(),
            "p_cond_se": self.p_cond_se.tolist(),
            "q_cond": self.q_cond.tolist(),
            "q_cond_se": self.q_cond_se.tolist(),
            "cond_defined": self.cond_defined.tolist(),
            "lambda": self.lam.tolist(),
            "lambda_se": self.lam_se.tolist(),
            "lambda_defined": self.lam_defined.tolist(),
        }


def _binomial_se(p: np.ndarray, n) -> np.ndarray:
    return np.sqrt(np.clip(p * (1.0 - p), 0.0, None) / n)


def _lambda_delta_se(cells: np.ndarray, q_joint: np.ndarray, lam: np.ndarray, j: int, n: int) -> float:
    """First-order error of lambda_j over the 8-cell multinomial.

    The gradient of lambda_j with respect to cell (b, a, ag) is
    D·1[a = j] − (D + lambda_j / (2 q_bj))·1[ag = j] with
    D = 1 / (2 sqrt(q0j q1j)); the variance is gᵀ(diag(r) − r rᵀ)g / n.
    """
    d = 1.0 / (2.0 * math.sqrt(q_joint[0, j] * q_joint[1, j]))
    g = np.zeros((2, 2, 2))
    g[:, j, :] += d
    for b in (0, 1):
        g[b, :, j] += -d - lam[j] / (2.0 * q_joint[b, j])
    mean = float((cells * g).sum())
    second = float((cells * g * g).sum())
    return math.sqrt(max(second - mean * mean, 0.0) / n)


def simulate(model: EnsembleModel, config: MCConfig) -> SimulationResult:
    """Estimate every report quantity by seeded sampling."""
    lowered = lower_model(model)
    counts8 = np.zeros(8, dtype=np.int64)
    for stream, size in enumerate(_stream_sizes(config.samples, config.streams)):
        if size:
            counts8 += _stream_counts(lowered, config.seed, stream, size)
    counts = counts8.reshape(2, 2, 2)
    n = config.samples

    p_joint_c = counts.sum(axis=2)
    q_joint_c = counts.sum(axis=1)
    b_c = counts.sum(axis=(1, 2))
    a_c = counts.sum(axis=(0, 2))

    p_joint = p_joint_c / n
    q_joint = q_joint_c / n
    p_b = b_c / n
    p_a = a_c / n

    cond_defined = b_c > 0
    p_cond = np.full((2, 2), np.nan)
    q_cond = np.full((2, 2), np.nan)
    p_cond_se = np.full((2, 2), np.nan)
    q_cond_se = np.full((2, 2), np.nan)
    for i in (0, 1):
        if cond_defined[i]:
            p_cond[i] = p_joint_c[i] / b_c[i]
            q_cond[i] = q_joint_c[i] / b_c[i]
            p_cond_se[i] = _binomial_se(p_cond[i], b_c[i])
            q_cond_se[i] = _binomial_se(q_cond[i], b_c[i])

    cells = counts / n
    lam = np.full(2, np.nan)
    lam_se = np.full(2, np.nan)
    lam_defined = (q_joint_c[0] > 0) & (q_joint_c[1] > 0)
    for j in (0, 1):
        if lam_defined[j]:
            num = (p_joint[0, j] - q_joint[0, j]) + (p_joint[1, j] - q_joint[1, j])
            lam[j] = num / (2.0 * math.sqrt(q_joint[0, j] * q_joint[1, j]))
            lam_se[j] = _lambda_delta_se(cells, q_joint, lam, j, n)

    return SimulationResult(
        config=config,
        n=n,
        counts=counts,
        p_b=p_b,
        p_b_se=_binomial_se(p_b, n),
        p_a=p_a,
        p_a_se=_binomial_se(p_a, n),
        p_joint=p_joint,
        p_joint_se=_binomial_se(p_joint, n),
        q_joint=q_joint,
        q_joint_se=_binomial_se(q_joint, n),
        p_cond=p_cond,
        p_cond_se=p_cond_se,
        q_cond=q_cond,
        q_cond_se=q_cond_se,
        cond_defined=cond_defined,
        lam=lam,
        lam_se=lam_se,
        lam_defined=lam_defined,
    )


@dataclass(frozen=True)
class QuantityCheck:
    name: str
    analytic: float
    empirical: float
    std_error: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "analytic": self.analytic,
            "empirical": self.empirical,
            "std_error": self.std_error,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ComparisonResult:
    """Per-quantity tolerance verdicts of empirical against analytic values."""

    k_sigma: float
    checks: tuple[QuantityCheck, ...]
    skipped: tuple[str, ...]
    passed: bool

    def failures(self) -> list[QuantityCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "k_sigma": self.k_sigma,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "skipped": list(self.skipped),
        }


def _analytic_values(report: ProbabilityReport) -> dict[str, float]:
    out: dict[str, float] = {}
    for i in (0, 1):
        out[f"p_b[{i}]"] = float(report.p_b[i])
    for j in (0, 1):
        out[f"p_a[{j}]"] = float(report.p_a[j])
    for i in (0, 1):
        for j in (0, 1):
            out[f"p_joint[{i},{j}]"] = float(report.p_joint[i, j])
            out[f"q_joint[{i},{j}]"] = float(report.q_joint[i, j])
            out[f"p_cond[{i},{j}]"] = float(report.p_cond[i, j])
            out[f"q_cond[{i},{j}]"] = float(report.q_cond[i, j])
    for j in (0, 1):
        out[f"lambda[{j}]"] = float(report.lam[j])
    return out


def compare(
    analytic: ProbabilityReport, empirical: SimulationResult, k_sigma: float
) -> ComparisonResult:
    """Check every estimated quantity against its analytic value at k·SE.

    Both inputs must describe the same model. A quantity passes iff
    |analytic − empirical| <= k_sigma · std_error. Undefined empirical
    cells are listed in ``skipped`` rather than judged.
    """
    reference = _analytic_values(analytic)
    checks: list[QuantityCheck] = []
    skipped: list[str] = []
    for name, est in empirical.estimates().items():
        if not math.isfinite(est.value):
            skipped.append(name)
            continue
        ok = abs(reference[name] - est.value) <= k_sigma * est.std_error
        checks.append(
            QuantityCheck(name, reference[name], est.value, est.std_error, bool(ok))
        )
    return ComparisonResult(
        k_sigma=float(k_sigma),
        checks=tuple(checks),
        skipped=tuple(skipped),
        passed=all(c.passed for c in checks),
    )
