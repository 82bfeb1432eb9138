"""Infix-based existence check for bounded-lookahead separating formulas.

A sample admits a globally separating formula with lookahead at most K
exactly when every negative prefix contains some window of length <= K
(an infix, closed at both ends) that matches no window of any positive
prefix.  This module decides that property and reports witness windows.

Candidate window starts and alignments are finite: window contents only
change shape at observation breakpoints, and every matching region of the
alignment parameter is left-closed with its infimum at a breakpoint
difference.  Window lengths are monotone (longer windows are harder to
match), so per start we only test the longest admissible window; "just
below the horizon" lengths are realized half a granularity step below T,
where the granularity is the gcd of all breakpoints, T and K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import fraction_gcd
from .signals import Infix, Sample, SignalPrefix


@dataclass(frozen=True)
class InfixWitness:
    """A window [start, end] of a negative prefix matching no positive window."""

    negative_index: int
    start: Fraction
    end: Fraction


@dataclass(frozen=True)
class SeparabilityResult:
    separable: bool
    witnesses: tuple[InfixWitness, ...]  # one per negative when separable
    failing_negative: int | None = None  # index of a negative with no witness


def infix_occurs_in(window: Infix, prefix: SignalPrefix) -> bool:
    """Does the window match the prefix on some [t, t+len] with t+len < T?"""
    length = window.length
    horizon = prefix.horizon
    if length >= horizon:
        return False
    candidates = {Fraction(0)}
    window_points = set(window.breakpoints) | {length}
    for bp in prefix.breakpoints:
        for wp in window_points:
            candidates.add(bp - wp)
    for t in sorted(candidates):
        if t < 0 or t + length >= horizon:
            continue
        if prefix.infix(t, t + length) == window:
            return True
    return False


def _window_starts(negative: SignalPrefix, bound: Fraction) -> list[Fraction]:
    horizon = negative.horizon
    starts = {Fraction(0)}
    for bp in negative.breakpoints:
        starts.add(bp)
        starts.add(max(Fraction(0), bp - bound))
    if horizon - bound >= 0:
        starts.add(horizon - bound)
    return sorted(t for t in starts if 0 <= t < horizon)


def _granularity(sample: Sample, bound: Fraction) -> Fraction:
    values = [sample.horizon, bound]
    for prefix in sample.prefixes:
        values.extend(prefix.breakpoints)
    return fraction_gcd(values)


def is_infix_separable(sample: Sample, bound) -> SeparabilityResult:
    """Decide whether each negative has a length-<=bound window matching no
    positive window; polynomial in the total breakpoint count."""
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("lookahead bound must be non-negative")
    horizon = sample.horizon
    step = _granularity(sample, bound)
    witnesses = []
    for idx, negative in enumerate(sample.negative):
        found = None
        for start in _window_starts(negative, bound):
            # Longest admissible window from this start; lengths approaching
            # the horizon are realized just below it (half a step), past the
            # last combinatorial change of the matching relation.
            end = min(start + bound, horizon - step / 2)
            if end < start:
                continue
            window = negative.infix(start, end)
            if not any(infix_occurs_in(window, pos) for pos in sample.positive):
                found = InfixWitness(idx, start, end)
                break
        if found is None:
            return SeparabilityResult(False, tuple(witnesses), failing_negative=idx)
        witnesses.append(found)
    return SeparabilityResult(True, tuple(witnesses))
