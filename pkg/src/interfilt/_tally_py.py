"""Numpy tally kernel; fallback when the compiled extension is unavailable.

Must stay bit-compatible with ``_tally.pyx``: same membership convention
(odd count of edges <= x), same affine evaluation order
``dst_lo[k] + (x - src_lo[k]) * slope[k]``.
"""

from __future__ import annotations

import numpy as np


def tally_counts(u, b_edges, a_edges, src_lo, dst_lo, slope):
    """Count samples into the 8 cells indexed by (b << 2) | (a << 1) | a_filtered."""
    b = np.searchsorted(b_edges, u, side="right") & 1
    a = np.searchsorted(a_edges, u, side="right") & 1
    k = np.searchsorted(src_lo, u, side="right") - 1
    y = dst_lo[k] + (u - src_lo[k]) * slope[k]
    ag = np.searchsorted(a_edges, y, side="right") & 1
    code = (b << 2) | (a << 1) | ag
    return np.bincount(code, minlength=8).astype(np.int64)
