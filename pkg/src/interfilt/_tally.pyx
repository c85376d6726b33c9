# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tally kernel; bit-compatible with the numpy fallback."""

import numpy as np


cdef inline Py_ssize_t _bisect_right(const double[::1] arr, double x) noexcept nogil:
    cdef Py_ssize_t lo = 0
    cdef Py_ssize_t hi = arr.shape[0]
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if x < arr[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


def tally_counts(const double[::1] u,
                 const double[::1] b_edges,
                 const double[::1] a_edges,
                 const double[::1] src_lo,
                 const double[::1] dst_lo,
                 const double[::1] slope):
    """Count samples into the 8 cells indexed by (b << 2) | (a << 1) | a_filtered."""
    counts = np.zeros(8, dtype=np.int64)
    cdef long long[::1] c = counts
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i, k
    cdef double x, y
    cdef int b, a, ag
    with nogil:
        for i in range(n):
            x = u[i]
            b = _bisect_right(b_edges, x) & 1
            a = _bisect_right(a_edges, x) & 1
            k = _bisect_right(src_lo, x) - 1
            y = dst_lo[k] + (x - src_lo[k]) * slope[k]
            ag = _bisect_right(a_edges, y) & 1
            c[(b << 2) | (a << 1) | ag] += 1
    return counts
