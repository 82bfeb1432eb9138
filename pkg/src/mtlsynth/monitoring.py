"""Interval-based monitoring of MTL formulas over signal prefixes.

`satisfaction_intervals` computes, per prefix, the maximal disjoint set of
time points at which the formula holds under the weak finite-prefix
semantics: a formula holds at t whenever some infinite extension of the
prefix could satisfy it.  Timed operators are resolved by shifting interval
bounds backwards and adding the horizon-tail region where the window runs
off the observed data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .formulas import AND, FINALLY, GLOBALLY, NOT, OR, PROP, UNTIL, MtlFormula
from .intervals import IntervalSet, minkowski_minus
from .signals import Sample, SignalPrefix


class MonitorError(ValueError):
    pass


def satisfaction_intervals(formula: MtlFormula, prefix: SignalPrefix) -> IntervalSet:
    """Maximal disjoint intervals of [0, T) on which `formula` holds."""
    horizon = prefix.horizon
    memo: dict[MtlFormula, IntervalSet] = {}

    def tail(bound: Fraction) -> list:
        # Region [T - bound, T) where the operator window leaves the prefix.
        left = max(horizon - bound, Fraction(0))
        return [(left, horizon)] if left < horizon else []

    def go(f: MtlFormula) -> IntervalSet:
        got = memo.get(f)
        if got is not None:
            return got
        if f.kind == PROP:
            result = prefix.base_intervals(f.name)
        elif f.kind == NOT:
            result = go(f.children[0]).complement()
        elif f.kind == OR:
            result = go(f.children[0]).union(go(f.children[1]))
        elif f.kind == AND:
            result = go(f.children[0]).intersect(go(f.children[1]))
        elif f.kind == FINALLY:
            shifted = minkowski_minus(go(f.children[0]), f.lo, f.hi)
            result = IntervalSet.from_spans(horizon, shifted + tail(f.hi))
        elif f.kind == GLOBALLY:
            gaps = go(f.children[0]).complement()
            reach = IntervalSet.from_spans(horizon, minkowski_minus(gaps, f.lo, f.hi))
            result = IntervalSet.from_spans(
                horizon, list(reach.complement().spans) + tail(f.lo)
            )
        elif f.kind == UNTIL:
            left_set = go(f.children[0])
            right_set = go(f.children[1])
            overlap = left_set.intersect(right_set)
            spans = []
            for piece in overlap.spans:
                # Each overlap component sits inside exactly one left-child span.
                host = next(
                    s for s in left_set.spans if s[0] <= piece[0] and piece[1] <= s[1]
                )
                shifted = minkowski_minus(IntervalSet(horizon, (piece,)), f.lo, f.hi)
                for new_left, new_right in shifted:
                    clipped = (max(new_left, host[0]), min(new_right, host[1]))
                    if clipped[0] < clipped[1]:
                        spans.append(clipped)
            if left_set.spans and left_set.spans[-1][1] == horizon:
                left = max(horizon - f.hi, left_set.spans[-1][0])
                if left < horizon:
                    spans.append((left, horizon))
            result = IntervalSet.from_spans(horizon, spans)
        else:
            raise MonitorError(f"unknown formula kind {f.kind!r}")
        memo[f] = result
        return result

    # Propositions the prefix never exhibits simply yield empty base intervals.
    return go(formula)


def satisfies_at(formula: MtlFormula, prefix: SignalPrefix, t) -> bool:
    """Does the formula hold at time t (0 <= t < T) on this prefix?"""
    return satisfaction_intervals(formula, prefix).covers(t)


@dataclass(frozen=True)
class SeparationWitness:
    """Why a formula fails to globally separate: which prefix, and where."""

    label: str  # "positive" or "negative"
    index: int
    time: Fraction | None  # for positives: a time the formula fails to hold


@dataclass(frozen=True)
class SeparationVerdict:
    separates: bool
    witness: SeparationWitness | None
    per_positive: tuple[IntervalSet, ...]
    per_negative: tuple[IntervalSet, ...]


def globally_separates(formula: MtlFormula, sample: Sample) -> SeparationVerdict:
    """Check the formula holds everywhere on positives, and fails somewhere on
    every negative.  Returns a verdict with a violation witness when false."""
    unknown = formula.propositions() - set(sample.alphabet)
    if unknown:
        raise MonitorError(f"formula uses propositions outside the sample alphabet: {sorted(unknown)}")
    pos_sets = tuple(satisfaction_intervals(formula, x) for x in sample.positive)
    neg_sets = tuple(satisfaction_intervals(formula, y) for y in sample.negative)
    for idx, intervals in enumerate(pos_sets):
        if not intervals.is_full():
            gap = intervals.complement().spans[0][0]
            witness = SeparationWitness("positive", idx, gap)
            return SeparationVerdict(False, witness, pos_sets, neg_sets)
    for idx, intervals in enumerate(neg_sets):
        if intervals.is_full():
            witness = SeparationWitness("negative", idx, None)
            return SeparationVerdict(False, witness, pos_sets, neg_sets)
    return SeparationVerdict(True, None, pos_sets, neg_sets)
