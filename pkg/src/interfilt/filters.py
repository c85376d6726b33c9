"""Piecewise-affine preparation filters and the probabilities they induce.

A filter is a measurable bijection of a sub-ensemble onto itself, encoded
as finitely many affine pieces: each piece carries a source interval onto
a target interval with positive slope. Pushing the uniform measure through
a filter turns the conditional probabilities of an observable into the
"lifted" probabilities the filtered ensemble actually exhibits.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .errors import PointOutsideDomain, ZeroConditioningEvent
from .intervals import IntervalSet

if TYPE_CHECKING:  # pragma: no cover
    from .ensemble import EnsembleModel


@dataclass(frozen=True)
class AffinePiece:
    """One affine piece mapping ``[src_lo, src_hi)`` onto ``[dst_lo, dst_hi)``."""

    src_lo: float
    src_hi: float
    dst_lo: float
    dst_hi: float

    @property
    def src_len(self) -> float:
        return self.src_hi - self.src_lo

    @property
    def dst_len(self) -> float:
        return self.dst_hi - self.dst_lo

    @property
    def slope(self) -> float:
        return self.dst_len / self.src_len

    @property
    def is_identity(self) -> bool:
        return self.src_lo == self.dst_lo and self.src_hi == self.dst_hi

    def forward(self, x: float) -> float:
        if self.is_identity:
            return x
        return self.dst_lo + (x - self.src_lo) * (self.dst_len / self.src_len)

    def inverse(self, y: float) -> float:
        """Pull a target point back to the source interval.

        Identity pieces and piece endpoints are mapped exactly (dst_lo ->
        src_lo, dst_hi -> src_hi) and interior points are clamped into
        [src_lo, src_hi], so preimages of whole pieces reproduce source
        intervals without rounding residue.
        """
        if self.is_identity:
            return y
        if y == self.dst_lo:
            return self.src_lo
        if y == self.dst_hi:
            return self.src_hi
        x = self.src_lo + (y - self.dst_lo) * (self.src_len / self.dst_len)
        return min(max(x, self.src_lo), self.src_hi)


@dataclass(frozen=True)
class Violation:
    """One structural defect found by :meth:`PiecewiseAffineMap.validate`."""

    rule: str
    piece: int | None
    detail: str

    def __str__(self) -> str:
        where = f" (piece {self.piece})" if self.piece is not None else ""
        return f"{self.rule}{where}: {self.detail}"


@dataclass(frozen=True)
class PiecewiseAffineMap:
    """Piecewise-affine bijection of an interval set onto itself.

    ``pieces`` are kept sorted by source. The declared ``domain`` must be
    tiled exactly by the sources and again by the targets; targets need not
    appear in source order (pieces may be permuted), which is what lets a
    filter rearrange mass while remaining a bijection.
    """

    pieces: tuple[AffinePiece, ...]
    domain: IntervalSet

    @classmethod
    def from_pieces(
        cls,
        pieces: Iterable[tuple[tuple[float, float], tuple[float, float]] | AffinePiece],
        domain: IntervalSet | None = None,
    ) -> "PiecewiseAffineMap":
        """Build from ``((src_lo, src_hi), (dst_lo, dst_hi))`` pairs or pieces.

        When ``domain`` is omitted it is taken to be the union of the source
        intervals. Structural invariants are not enforced here; call
        :meth:`validate` (model constructors do).
        """
        norm: list[AffinePiece] = []
        for p in pieces:
            if isinstance(p, AffinePiece):
                norm.append(p)
            else:
                (slo, shi), (dlo, dhi) = p
                norm.append(AffinePiece(float(slo), float(shi), float(dlo), float(dhi)))
        norm.sort(key=lambda p: (p.src_lo, p.src_hi))
        if domain is None:
            src = [(p.src_lo, p.src_hi) for p in norm if p.src_lo < p.src_hi]
            domain = IntervalSet.from_pairs(src) if src else IntervalSet.empty()
        return cls(tuple(norm), domain)

    @classmethod
    def identity(cls, domain: IntervalSet) -> "PiecewiseAffineMap":
        return cls.from_pieces([((lo, hi), (lo, hi)) for lo, hi in domain.intervals], domain)

    @cached_property
    def _src_los(self) -> list[float]:
        return [p.src_lo for p in self.pieces]

    def apply(self, x: float) -> float:
        """Evaluate the map at a point of the domain."""
        k = bisect_right(self._src_los, x) - 1
        if k < 0:
            raise PointOutsideDomain(x)
        piece = self.pieces[k]
        if not (piece.src_lo <= x < piece.src_hi):
            raise PointOutsideDomain(x)
        return piece.forward(x)

    __call__ = apply

    def preimage(self, target: IntervalSet) -> IntervalSet:
        """Exact inverse image of ``target`` under the map.

        The target is first intersected with the range (the union of target
        intervals of the pieces), then each overlap is pulled back through
        the affine inverse of its piece. Requires a map that validates clean.
        """
        pairs: list[tuple[float, float]] = []
        for piece in self.pieces:
            seg = target.intersect(IntervalSet(((piece.dst_lo, piece.dst_hi),)))
            for lo, hi in seg.intervals:
                x_lo = piece.inverse(lo)
                x_hi = piece.inverse(hi)
                if x_lo < x_hi:
                    pairs.append((x_lo, x_hi))
        if not pairs:
            return IntervalSet.empty()
        return IntervalSet.from_pairs(pairs)

    def validate(self) -> list[Violation]:
        """Return every structural defect; an empty list means the map is sound.

        Rules reported: ``OutsideUnit``, ``SourceNotPositive``,
        ``TargetNotPositive``, ``OverlappingSources``, ``OverlappingTargets``,
        ``DomainNotCovered``, ``TargetNotOnto``.
        """
        out: list[Violation] = []
        src_ok: list[tuple[float, float]] = []
        dst_ok: list[tuple[float, float, int]] = []
        for k, p in enumerate(self.pieces):
            bad_unit = not (
                0.0 <= min(p.src_lo, p.dst_lo) and max(p.src_hi, p.dst_hi) <= 1.0
            )
            if bad_unit:
                out.append(Violation("OutsideUnit", k, f"piece endpoints {p} leave [0, 1]"))
            if not p.src_lo < p.src_hi:
                out.append(Violation("SourceNotPositive", k, f"source [{p.src_lo}, {p.src_hi}) is empty"))
            elif not bad_unit:
                src_ok.append((p.src_lo, p.src_hi))
            if not p.dst_lo < p.dst_hi:
                out.append(Violation("TargetNotPositive", k, f"target [{p.dst_lo}, {p.dst_hi}) is empty"))
            elif not bad_unit:
                dst_ok.append((p.dst_lo, p.dst_hi, k))

        src_sorted = sorted(src_ok)
        for (a_lo, a_hi), (b_lo, _) in zip(src_sorted, src_sorted[1:]):
            if b_lo < a_hi:
                out.append(
                    Violation(
                        "OverlappingSources", None,
                        f"sources [{a_lo}, {a_hi}) and starting at {b_lo} overlap",
                    )
                )
        dst_sorted = sorted(dst_ok)
        for (a_lo, a_hi, a_k), (b_lo, _, b_k) in zip(dst_sorted, dst_sorted[1:]):
            if b_lo < a_hi:
                out.append(
                    Violation(
                        "OverlappingTargets", b_k,
                        f"targets of pieces {a_k} and {b_k} overlap at {b_lo}",
                    )
                )

        if not any(v.rule in ("OverlappingSources", "OutsideUnit") for v in out):
            src_union = IntervalSet.from_pairs(src_ok) if src_ok else IntervalSet.empty()
            if src_union != self.domain:
                out.append(
                    Violation("DomainNotCovered", None,
                              f"source union {src_union} != domain {self.domain}")
                )
        if not any(v.rule in ("OverlappingTargets", "OutsideUnit") for v in out):
            dst_union = (
                IntervalSet.from_pairs([(lo, hi) for lo, hi, _ in dst_ok])
                if dst_ok else IntervalSet.empty()
            )
            if dst_union != self.domain:
                out.append(
                    Violation("TargetNotOnto", None,
                              f"target union {dst_union} != domain {self.domain}")
                )
        return out


def pushforward_joint(model: "EnsembleModel") -> np.ndarray:
    """Joint probabilities after filtering: ``q[i, j] = P(a∘g_i = j, b = i)``.

    Row ``i`` sums to the marginal ``P(b = i)`` because each filter is a
    bijection of its conditioning event onto itself.
    """
    q = np.empty((2, 2))
    for i, g in ((0, model.g0), (1, model.g1)):
        b_event = model.b.event(i)
        for j in (0, 1):
            q[i, j] = g.preimage(model.a.event(j)).intersect(b_event).measure
    return q


def lifted_conditional(q_joint: np.ndarray, marginal_b: np.ndarray) -> np.ndarray:
    """Conditional probabilities on the filtered ensembles, ``q[i, j] / P(b = i)``."""
    for i in (0, 1):
        if marginal_b[i] == 0.0:
            raise ZeroConditioningEvent(i)
    return np.asarray(q_joint) / np.asarray(marginal_b)[:, None]
