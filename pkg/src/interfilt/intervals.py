"""Finite unions of half-open subintervals of [0, 1) under Lebesgue measure.

The canonical form is the backbone of every exact computation in this
package: intervals are sorted, pairwise disjoint, and never adjacent
(``hi`` of one is strictly below ``lo`` of the next), so set algebra is
closed and equality of sets is equality of endpoint tuples.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of half-open intervals ``[lo, hi) ⊆ [0, 1)``."""

    intervals: tuple[tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        prev_hi = None
        for lo, hi in self.intervals:
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"non-finite endpoint in {(lo, hi)}")
            if not (0.0 <= lo < hi <= 1.0):
                raise ValueError(f"interval {(lo, hi)} not a subinterval of [0, 1)")
            if prev_hi is not None and lo <= prev_hi:
                raise ValueError("intervals not in canonical (sorted, disjoint) form")
            prev_hi = hi

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "IntervalSet":
        """Build the canonical union of arbitrary ``[lo, hi)`` pairs.

        Pairs may be unsorted and may overlap or touch; the result merges
        them. Each pair must satisfy ``0 <= lo < hi <= 1``.
        """
        cleaned = []
        for k, (lo, hi) in enumerate(pairs):
            lo = float(lo)
            hi = float(hi)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"pair {k}: non-finite endpoint {(lo, hi)}")
            if not (0.0 <= lo < hi <= 1.0):
                raise ValueError(f"pair {k}: {(lo, hi)} is not a valid subinterval of [0, 1)")
            cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[tuple[float, float]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((0.0, 1.0),))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @cached_property
    def measure(self) -> float:
        """Total length; exact sum of endpoint differences."""
        return math.fsum(hi - lo for lo, hi in self.intervals)

    @cached_property
    def edges(self) -> tuple[float, ...]:
        """Flattened, ascending endpoint sequence ``(lo0, hi0, lo1, hi1, ...)``.

        A point is inside the set iff the number of edges <= x is odd,
        which is the membership test used by the sampling kernels.
        """
        out: list[float] = []
        for lo, hi in self.intervals:
            out.append(lo)
            out.append(hi)
        return tuple(out)

    def contains(self, x: float) -> bool:
        return bool(bisect_right(self.edges, x) & 1)

    def complement(self) -> "IntervalSet":
        """Complement within [0, 1); exact (endpoints are reused, never recomputed)."""
        out: list[tuple[float, float]] = []
        prev = 0.0
        for lo, hi in self.intervals:
            if lo > prev:
                out.append((prev, lo))
            prev = hi
        if prev < 1.0:
            out.append((prev, 1.0))
        return IntervalSet(tuple(out))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        a, b = self.intervals, other.intervals
        out: list[tuple[float, float]] = []
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_pairs(self.intervals + other.intervals)

    def __repr__(self) -> str:
        body = " ∪ ".join(f"[{lo:g}, {hi:g})" for lo, hi in self.intervals)
        return f"IntervalSet({body or '∅'})"
