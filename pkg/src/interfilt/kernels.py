"""Backend selection and model lowering for the sampling hot loop.

The per-sample tally is the only performance-critical code in the package.
Two interchangeable implementations exist: a Cython extension
(``interfilt._tally``) and a numpy fallback (``interfilt._tally_py``). Both
consume the same pre-lowered arrays and produce bit-identical counts, so
which one runs never changes a result. Selection happens at import; set
``INTERFILT_TALLY=python`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _tally_py
from .ensemble import EnsembleModel

try:  # compiled extension is optional
    from . import _tally as _tally_c
except ImportError:  # pragma: no cover - depends on the build
    _tally_c = None

if os.environ.get("INTERFILT_TALLY", "").lower() == "python" or _tally_c is None:
    _impl = _tally_py
    BACKEND = "python"
else:
    _impl = _tally_c
    BACKEND = "cython"


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by name (for benchmarks and tests)."""
    out: dict[str, object] = {"python": _tally_py}
    if _tally_c is not None:
        out["cython"] = _tally_c
    return out


@dataclass(frozen=True)
class LoweredModel:
    """Model flattened to the arrays the kernels consume.

    Filter pieces of both filters are merged and sorted by source; because
    each filter tiles its conditioning event and the two events partition
    [0, 1), the merged sources tile [0, 1) and a binary search on
    ``src_lo`` finds every sample's piece.
    """

    b_edges: np.ndarray
    a_edges: np.ndarray
    src_lo: np.ndarray
    dst_lo: np.ndarray
    slope: np.ndarray


def lower_model(model: EnsembleModel) -> LoweredModel:
    pieces = sorted(model.g0.pieces + model.g1.pieces, key=lambda p: p.src_lo)
    src_lo = np.array([p.src_lo for p in pieces])
    src_hi = np.array([p.src_hi for p in pieces])
    if src_lo[0] != 0.0 or src_hi[-1] != 1.0 or np.any(src_lo[1:] != src_hi[:-1]):
        raise ValueError("filter sources do not tile [0, 1); model is invalid")
    dst_lo = np.array([p.dst_lo for p in pieces])
    dst_hi = np.array([p.dst_hi for p in pieces])
    return LoweredModel(
        b_edges=np.array(model.b.ones.edges),
        a_edges=np.array(model.a.ones.edges),
        src_lo=src_lo,
        dst_lo=dst_lo,
        slope=(dst_hi - dst_lo) / (src_hi - src_lo),
    )


def tally_counts(u: np.ndarray, lowered: LoweredModel, impl=None) -> np.ndarray:
    """Tally uniforms into the 8 cells (b, a, a∘g); int64 counts."""
    impl = impl or _impl
    return impl.tally_counts(
        np.ascontiguousarray(u),
        lowered.b_edges,
        lowered.a_edges,
        lowered.src_lo,
        lowered.dst_lo,
        lowered.slope,
    )
