"""Seeded random generators for prefixes, formulas and samples."""

from __future__ import annotations

import random
from fractions import Fraction

from mtlsynth.formulas import (
    MtlFormula,
    always,
    conj,
    disj,
    eventually,
    neg,
    prop,
    size,
    until,
)
from mtlsynth.monitoring import satisfaction_intervals
from mtlsynth.signals import Sample, SignalPrefix


def random_prefix(
    rng: random.Random,
    alphabet: list[str],
    horizon: Fraction,
    max_segments: int = 5,
    denominator: int = 1,
) -> SignalPrefix:
    """Piecewise-constant prefix with breakpoints on the 1/denominator grid."""
    horizon = Fraction(horizon)
    grid = [
        Fraction(k, denominator)
        for k in range(0, int(horizon * denominator))
    ]
    count = rng.randint(1, min(max_segments, len(grid)))
    points = sorted(rng.sample(grid, count))
    if points[0] != 0:
        points[0] = Fraction(0)
    values = []
    for idx in range(len(points)):
        while True:
            value = frozenset(p for p in alphabet if rng.random() < 0.5)
            if not values or values[-1] != value:
                break
        values.append(value)
    return SignalPrefix(tuple(points), tuple(values), horizon)


def random_bounds(rng: random.Random, limit: Fraction, max_denominator: int = 4):
    den = rng.randint(1, max_denominator)
    ticks = int(limit * den)
    a = Fraction(rng.randint(0, ticks), den)
    b = Fraction(rng.randint(int(a * den), ticks), den)
    return a, b


def random_formula(
    rng: random.Random,
    alphabet: list[str],
    max_size: int,
    bound_limit: Fraction,
    max_denominator: int = 4,
) -> MtlFormula:
    """Random NNF formula whose DAG size stays within max_size."""

    def build(budget: int) -> MtlFormula:
        if budget <= 1:
            return prop(rng.choice(alphabet))
        kind = rng.choice(["prop", "not", "and", "or", "until", "finally", "globally"])
        if kind == "prop":
            return prop(rng.choice(alphabet))
        if kind == "not":
            return neg(prop(rng.choice(alphabet)))
        if kind in ("finally", "globally"):
            lo, hi = random_bounds(rng, bound_limit, max_denominator)
            child = build(budget - 1)
            return eventually(child, lo, hi) if kind == "finally" else always(child, lo, hi)
        left = build(budget - 1)
        right = build(budget - 1 - size(left))
        if kind == "and":
            return conj(left, right)
        if kind == "or":
            return disj(left, right)
        lo, hi = random_bounds(rng, bound_limit, max_denominator)
        return until(left, right, lo, hi)

    for _ in range(100):
        candidate = build(max_size)
        if size(candidate) <= max_size:
            return candidate
    return prop(rng.choice(alphabet))


def sample_labeled_by(
    formula: MtlFormula,
    prefixes: list[SignalPrefix],
    alphabet: list[str],
) -> Sample | None:
    """Split prefixes by the global verdict of `formula`; None if one side
    comes out empty."""
    positive, negative = [], []
    for prefix in prefixes:
        if satisfaction_intervals(formula, prefix).is_full():
            positive.append(prefix)
        else:
            negative.append(prefix)
    if not positive or not negative:
        return None
    return Sample(tuple(positive), tuple(negative), tuple(alphabet), prefixes[0].horizon)
