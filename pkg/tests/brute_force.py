"""Exhaustive small-formula search, used as the minimality oracle."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from mtlsynth.formulas import (
    MtlFormula,
    always,
    conj,
    disj,
    eventually,
    future_reach,
    neg,
    prop,
    size,
    until,
)
from mtlsynth.monitoring import globally_separates
from mtlsynth.signals import Sample


def critical_bound_pairs(sample: Sample, reach_bound: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Interval bounds worth trying: breakpoints, the horizon, the lookahead
    budget, and their non-negative pairwise differences."""
    values = {Fraction(0), Fraction(reach_bound)}
    base = {Fraction(0), sample.horizon, Fraction(reach_bound)}
    for prefix in sample.prefixes:
        base.update(prefix.breakpoints)
    for x in base:
        for y in base:
            if x - y >= 0:
                values.add(x - y)
    usable = sorted(v for v in values if v <= reach_bound)
    return [(a, b) for a in usable for b in usable if a <= b]


def enumerate_formulas(
    alphabet,
    bound_pairs,
    max_size: int,
    reach_cap: Fraction | None = None,
) -> list[MtlFormula]:
    """All distinct formulas of DAG size <= max_size (lookahead-capped)."""
    found: set[MtlFormula] = {prop(p) for p in alphabet}
    frontier = set(found)
    while frontier:
        fresh: set[MtlFormula] = set()

        def consider(candidate: MtlFormula):
            if size(candidate) > max_size or candidate in found:
                return
            if reach_cap is not None and future_reach(candidate) > reach_cap:
                return
            fresh.add(candidate)

        for f in frontier:
            if f.kind == "prop":
                consider(neg(f))
            for lo, hi in bound_pairs:
                consider(eventually(f, lo, hi))
                consider(always(f, lo, hi))
        pool = list(found | frontier)
        for f in frontier:
            for g in pool:
                consider(conj(f, g))
                consider(conj(g, f))
                consider(disj(f, g))
                consider(disj(g, f))
                for lo, hi in bound_pairs:
                    consider(until(f, g, lo, hi))
                    consider(until(g, f, lo, hi))
        found |= fresh
        frontier = fresh
    return sorted(found, key=size)


def minimal_separator_size(
    sample: Sample, reach_bound: Fraction, max_size: int = 3
) -> tuple[int, MtlFormula] | None:
    """Smallest DAG size of a globally separating formula with lookahead
    within the bound, over bounds drawn from the sample's critical values;
    None when no such formula of size <= max_size exists."""
    pairs = critical_bound_pairs(sample, reach_bound)
    for candidate in enumerate_formulas(
        sample.alphabet, pairs, max_size, reach_cap=Fraction(reach_bound)
    ):
        if globally_separates(candidate, sample).separates:
            return size(candidate), candidate
    return None
