"""Acceptance suite: one test per release criterion, each at its pinned
tolerance, printing one PASS/FAIL line per criterion (run with ``-s`` or
``-rA`` to see the lines)."""

import math

import numpy as np
import pytest

from interfilt.deviations import (
    RegimeClass,
    born_check,
    normalized_deviation,
    normalized_deviation_joint,
    reconstruct_total,
)
from interfilt.ensemble import conditional, joint_ab, marginal_a, marginal_b
from interfilt.filters import lifted_conditional, pushforward_joint
from interfilt.montecarlo import MCConfig, compare, simulate
from interfilt.reference import (
    ReferenceParams,
    build_reference,
    ds_beta,
    lambda0_ds,
    perturbation_measures,
    sweep,
    thresholds,
)
from interfilt.report import analyze

from conftest import random_model

ALPHA_MINUS, ALPHA_PLUS = thresholds()


def criterion(num: int, ok: bool, detail: str):
    print(f"[criterion {num:2d}] {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num} failed: {detail}"


@pytest.fixture(scope="module")
def model_batch():
    """1000 well-conditioned random models with precomputed quantities."""
    gen = np.random.default_rng(60923)
    batch = []
    for _ in range(1000):
        model = random_model(gen)
        p_b = marginal_b(model)
        p_joint = joint_ab(model)
        q_joint = pushforward_joint(model)
        batch.append(
            (
                model,
                p_b,
                p_joint,
                conditional(p_joint, p_b),
                q_joint,
                lifted_conditional(q_joint, p_b),
            )
        )
    return batch


def engine_lambda0(alpha: float) -> float:
    model = build_reference(ReferenceParams(alpha, ds_beta(alpha)))
    return normalized_deviation_joint(joint_ab(model), pushforward_joint(model))[0]


def bisect(f, lo: float, hi: float, width: float = 1e-12) -> float:
    f_lo = f(lo)
    assert f_lo * f(hi) < 0, "bisection bracket does not straddle a root"
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if f(mid) == 0.0:
            return mid
        if f_lo * f(mid) < 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_criterion_01_reference_joints_exact():
    p = joint_ab(build_reference(ReferenceParams(0.2, ds_beta(0.2))))
    got = (p[0, 1], p[0, 0], p[1, 1], p[1, 0])
    want = (5 / 12, 1 / 4, 1 / 12, 1 / 4)
    err = max(abs(g - w) for g, w in zip(got, want))
    criterion(1, err <= 1e-15, f"joint cells (5/12, 1/4, 1/12, 1/4); max error {err:.2e}")


def test_criterion_02_precise_filtration_is_classical():
    model = build_reference(ReferenceParams(0.25, 0.75))
    p_b = marginal_b(model)
    p_cond = conditional(joint_ab(model), p_b)
    q_cond = lifted_conditional(pushforward_joint(model), p_b)
    lam = normalized_deviation(p_b, p_cond, q_cond)
    err = float(np.max(np.abs(lam)))
    criterion(2, err <= 1e-12, f"alpha=1/4, beta=3/4 gives lambda = 0; max |lambda| {err:.2e}")


def test_criterion_03_unique_decoherence_point():
    at_sixth = abs(engine_lambda0(1 / 6))
    alphas = [k * 1e-3 for k in range(1, 334)]
    lam = [lambda0_ds(a) for a in alphas]
    zero_cells = [
        k
        for k in range(len(alphas) - 1)
        if lam[k] == 0.0 or lam[k] * lam[k + 1] < 0.0
    ]
    unique = len(zero_cells) == 1
    brackets = unique and alphas[zero_cells[0]] <= 1 / 6 <= alphas[zero_cells[0] + 1]
    criterion(
        3,
        at_sixth <= 1e-12 and unique and brackets,
        f"|lambda0(1/6)| = {at_sixth:.2e}; zero cells on 1e-3 grid: {len(zero_cells)}",
    )


def test_criterion_04_thresholds_and_bisection_oracle():
    closed_err = max(
        abs(lambda0_ds(ALPHA_PLUS) - 1.0), abs(lambda0_ds(ALPHA_MINUS) + 1.0)
    )
    root_minus = bisect(lambda a: engine_lambda0(a) + 1.0, 1e-9, 1 / 6)
    root_plus = bisect(lambda a: engine_lambda0(a) - 1.0, 1 / 6, 1 / 3 - 1e-9)
    oracle_err = max(abs(root_minus - ALPHA_MINUS), abs(root_plus - ALPHA_PLUS))
    criterion(
        4,
        closed_err <= 1e-12 and oracle_err <= 1e-10,
        f"lambda0((3±2√2)/18) = ±1 (err {closed_err:.2e}); "
        f"bisection recovers thresholds (err {oracle_err:.2e})",
    )


def test_criterion_05_maximal_asymmetry():
    err = max(
        abs(perturbation_measures(ReferenceParams(a, ds_beta(a)))[2] - math.sqrt(2) / 9)
        for a in (ALPHA_MINUS, ALPHA_PLUS)
    )
    criterion(5, err <= 1e-12, f"xi(alpha±) = sqrt(2)/9; max error {err:.2e}")


def test_criterion_06_reconstruction_identity(model_batch):
    worst = 0.0
    for model, p_b, _, p_cond, _, q_cond in model_batch:
        lam = normalized_deviation(p_b, p_cond, q_cond)
        rec = reconstruct_total(p_b, q_cond, lam)
        worst = max(worst, float(np.max(np.abs(rec - marginal_a(model)))))
    criterion(6, worst <= 1e-12, f"1000 models: max |direct - reconstructed| = {worst:.2e}")


def test_criterion_07_deviation_identities(model_batch):
    worst_agree = 0.0
    worst_cancel = 0.0
    for _, p_b, p_joint, p_cond, q_joint, q_cond in model_batch:
        lam_cond = normalized_deviation(p_b, p_cond, q_cond)
        lam_joint = normalized_deviation_joint(p_joint, q_joint)
        worst_agree = max(worst_agree, float(np.max(np.abs(lam_cond - lam_joint))))
        cancel = math.sqrt(q_cond[0, 0] * q_cond[1, 0]) * lam_joint[0] + math.sqrt(
            q_cond[0, 1] * q_cond[1, 1]
        ) * lam_joint[1]
        worst_cancel = max(worst_cancel, abs(cancel))
    criterion(
        7,
        worst_agree <= 1e-12 and worst_cancel <= 1e-12,
        f"1000 models: form agreement {worst_agree:.2e}, cancellation {worst_cancel:.2e}",
    )


def test_criterion_08_amplitude_cross_check():
    gen = np.random.default_rng(41925)
    worst = 0.0
    for _ in range(100):
        s = gen.uniform(0.02, 0.98)
        p0 = gen.uniform(0.02, 0.98)
        theta = gen.uniform(0.0, 2.0 * math.pi)
        p_b = np.array([p0, 1.0 - p0])
        q = np.array([[s, 1.0 - s], [1.0 - s, s]])
        lam = np.array([math.cos(theta), -math.cos(theta)])
        diff = born_check(p_b, q, theta) - reconstruct_total(p_b, q, lam)
        worst = max(worst, float(np.max(np.abs(diff))))
    criterion(8, worst <= 1e-12, f"100 amplitude/formula pairs: max gap {worst:.2e}")


def test_criterion_09_double_stochastic_antisymmetry():
    worst = 0.0
    for alpha in np.linspace(0.002, 0.331, 300):
        model = build_reference(ReferenceParams(alpha, ds_beta(alpha)))
        lam = normalized_deviation_joint(joint_ab(model), pushforward_joint(model))
        worst = max(worst, abs(lam[0] + lam[1]))
    criterion(9, worst <= 1e-12, f"300 DS points: max |lambda0 + lambda1| = {worst:.2e}")


def test_criterion_10_monte_carlo_convergence():
    worst_z = 0.0
    worst_lam = 0.0
    ok = True
    for alpha in (0.05, 1 / 6, 0.2, 0.3):
        model = build_reference(ReferenceParams(alpha, ds_beta(alpha)))
        rep = analyze(model)
        sim = simulate(model, MCConfig(seed=42, samples=1_000_000))
        comp = compare(rep, sim, 4.0)
        joints = [c for c in comp.checks if "joint" in c.name]
        ok &= all(c.passed for c in joints)
        worst_z = max(
            worst_z,
            max(abs(c.analytic - c.empirical) / c.std_error for c in joints if c.std_error),
        )
        lam_err = abs(sim.lam[0] - rep.lam[0])
        worst_lam = max(worst_lam, lam_err)
        ok &= lam_err <= 5e-3
    criterion(
        10,
        ok,
        f"n=1e6 seed=42 at 4 alphas: worst joint z = {worst_z:.2f} (<= 4), "
        f"worst |lambda0 error| = {worst_lam:.2e} (<= 5e-3)",
    )


def test_criterion_11_regime_map():
    rows = sweep(0.001, 0.333, 0.001, ds=True)
    runs: list[tuple[RegimeClass, list[float]]] = []
    for r in rows:
        if runs and runs[-1][0] is r.regime:
            runs[-1][1].append(r.alpha)
        else:
            runs.append((r.regime, [r.alpha]))
    shape_ok = [reg for reg, _ in runs] == [
        RegimeClass.HYPERBOLIC,
        RegimeClass.TRIGONOMETRIC,
        RegimeClass.HYPERBOLIC,
    ]
    signs_ok = shape_ok and all(
        lambda0_ds(a) < -1 for a in runs[0][1]
    ) and all(lambda0_ds(a) > 1 for a in runs[2][1])
    step = 0.001
    bound_ok = shape_ok and (
        runs[0][1][-1] < ALPHA_MINUS < runs[1][1][0]
        and runs[1][1][0] - runs[0][1][-1] <= step + 1e-12
        and runs[1][1][-1] < ALPHA_PLUS < runs[2][1][0]
        and runs[2][1][0] - runs[1][1][-1] <= step + 1e-12
    )
    criterion(
        11,
        shape_ok and signs_ok and bound_ok,
        f"regions {[str(reg) for reg, _ in runs]}; boundaries bracket alpha∓ within one step",
    )
