"""Maximal disjoint half-open interval sets over a bounded horizon [0, T).

An IntervalSet is the canonical representation of a subset of [0, T) that is
a finite union of intervals: spans are sorted, pairwise disjoint and
non-adjacent (gaps have positive length), and every span is non-empty.
Equality of point sets is therefore structural equality.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .rationals import format_rational

Span = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class IntervalSet:
    horizon: Fraction
    spans: tuple[Span, ...] = ()

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError("horizon must be positive")
        prev_right = None
        for left, right in self.spans:
            if not (0 <= left < right <= self.horizon):
                raise ValueError(f"bad span [{left},{right}) for horizon {self.horizon}")
            if prev_right is not None and prev_right >= left:
                raise ValueError("spans must be sorted, disjoint and non-adjacent")
            prev_right = right

    @staticmethod
    def from_spans(horizon, raw_spans) -> "IntervalSet":
        """Normalize arbitrary spans: clip to [0, T), drop empties, merge overlaps
        and adjacencies into maximal disjoint intervals."""
        horizon = Fraction(horizon)
        clipped = []
        for left, right in raw_spans:
            left = max(Fraction(left), Fraction(0))
            right = min(Fraction(right), horizon)
            if left < right:
                clipped.append((left, right))
        clipped.sort()
        merged: list[Span] = []
        for left, right in clipped:
            if merged and left <= merged[-1][1]:
                if right > merged[-1][1]:
                    merged[-1] = (merged[-1][0], right)
            else:
                merged.append((left, right))
        return IntervalSet(horizon, tuple(merged))

    @staticmethod
    def empty(horizon) -> "IntervalSet":
        return IntervalSet(Fraction(horizon))

    @staticmethod
    def full(horizon) -> "IntervalSet":
        horizon = Fraction(horizon)
        return IntervalSet(horizon, ((Fraction(0), horizon),))

    def is_full(self) -> bool:
        return self.spans == ((Fraction(0), self.horizon),)

    def covers(self, t: Fraction) -> bool:
        """Membership of time point t (0 <= t < horizon)."""
        t = Fraction(t)
        if not 0 <= t < self.horizon:
            raise ValueError(f"time point {t} outside [0,{self.horizon})")
        idx = bisect_right(self.spans, (t, self.horizon + 1)) - 1
        return idx >= 0 and self.spans[idx][0] <= t < self.spans[idx][1]

    def complement(self) -> "IntervalSet":
        """Maximal disjoint intervals of [0, T) minus this set."""
        gaps = []
        cursor = Fraction(0)
        for left, right in self.spans:
            if cursor < left:
                gaps.append((cursor, left))
            cursor = right
        if cursor < self.horizon:
            gaps.append((cursor, self.horizon))
        return IntervalSet(self.horizon, tuple(gaps))

    def _check_same_horizon(self, other: "IntervalSet"):
        if self.horizon != other.horizon:
            raise ValueError("interval sets have different horizons")

    def union(self, other: "IntervalSet") -> "IntervalSet":
        self._check_same_horizon(other)
        return IntervalSet.from_spans(self.horizon, self.spans + other.spans)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        self._check_same_horizon(other)
        out = []
        for l1, r1 in self.spans:
            for l2, r2 in other.spans:
                left, right = max(l1, l2), min(r1, r2)
                if left < right:
                    out.append((left, right))
        return IntervalSet.from_spans(self.horizon, out)

    def __str__(self):
        body = ",".join(
            f"[{format_rational(l)},{format_rational(r)})" for l, r in self.spans
        )
        return "{" + body + "}"


def minkowski_minus(intervals: IntervalSet, lo: Fraction, hi: Fraction) -> list[Span]:
    """Per-span backward shift: [l, r) -> [l-hi, r-lo) clipped to [0, T).

    Empty results are dropped.  The returned list may contain overlapping or
    adjacent spans; callers normalize with `IntervalSet.from_spans`.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo < 0 or lo > hi:
        raise ValueError(f"invalid shift interval [{lo},{hi}]")
    out = []
    for left, right in intervals.spans:
        new_left = max(left - hi, Fraction(0))
        new_right = min(right - lo, intervals.horizon)
        if new_left < new_right:
            out.append((new_left, new_right))
    return out
