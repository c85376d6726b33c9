"""Shared randomized-model generators for the test suite.

All generators are driven by an explicit numpy Generator so every test is
reproducible. Models are rejection-sampled until every filtered joint cell
carries decent mass (>= 1e-3), which keeps the interference coefficients
well-conditioned for the 1e-12 identity checks.
"""

from __future__ import annotations

import numpy as np
import pytest

from interfilt.ensemble import DichotomicObservable, EnsembleModel
from interfilt.filters import PiecewiseAffineMap, pushforward_joint
from interfilt.intervals import IntervalSet

MIN_CELL = 1e-3


def random_interval_set(rng: np.random.Generator, max_parts: int = 3) -> IntervalSet:
    """Canonical set with 1..max_parts components and nontrivial measure."""
    while True:
        k = int(rng.integers(1, max_parts + 1))
        points = np.sort(rng.random(2 * k))
        if len(np.unique(points)) < 2 * k:
            continue
        pairs = [(points[2 * i], points[2 * i + 1]) for i in range(k)]
        s = IntervalSet.from_pairs(pairs)
        if 0.05 < s.measure < 0.95:
            return s


def random_partition(rng: np.random.Generator, domain: IntervalSet, n_pieces: int):
    """Split a domain into exactly n_pieces single intervals (>= one per component)."""
    parts = list(domain.intervals)
    assert n_pieces >= len(parts)
    counts = [1] * len(parts)
    for _ in range(n_pieces - len(parts)):
        counts[int(rng.integers(0, len(parts)))] += 1
    pieces = []
    for (lo, hi), c in zip(parts, counts):
        cuts = np.sort(rng.uniform(lo, hi, size=c - 1))
        edges = [lo, *cuts.tolist(), hi]
        for a, b in zip(edges, edges[1:]):
            if not a < b:  # collision; retry with fresh cuts
                return random_partition(rng, domain, n_pieces)
            pieces.append((a, b))
    return pieces


def random_bijection(rng: np.random.Generator, domain: IntervalSet) -> PiecewiseAffineMap:
    """Random measurable piecewise-affine bijection of the domain onto itself."""
    n_pieces = len(domain.intervals) + int(rng.integers(0, 3))
    src = random_partition(rng, domain, n_pieces)
    dst = random_partition(rng, domain, n_pieces)
    order = rng.permutation(n_pieces) if rng.random() < 0.7 else np.arange(n_pieces)
    return PiecewiseAffineMap.from_pieces(
        [(src[i], dst[order[i]]) for i in range(n_pieces)], domain
    )


def random_model(rng: np.random.Generator, attempts: int = 500) -> EnsembleModel:
    """Random valid model with all filtered joint cells >= MIN_CELL."""
    for _ in range(attempts):
        b = DichotomicObservable(random_interval_set(rng))
        a = DichotomicObservable(random_interval_set(rng))
        model = EnsembleModel(
            a=a,
            b=b,
            g0=random_bijection(rng, b.event(0)),
            g1=random_bijection(rng, b.event(1)),
        )
        if pushforward_joint(model).min() >= MIN_CELL:
            return model
    raise RuntimeError("could not draw a well-conditioned random model")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
