import random
from fractions import Fraction as Fr

import pytest

from gen import random_formula, random_prefix
from oracle_semantics import truth_grid

from mtlsynth.formulas import future_reach, parse_formula, size
from mtlsynth.intervals import IntervalSet
from mtlsynth.monitoring import (
    MonitorError,
    globally_separates,
    satisfaction_intervals,
    satisfies_at,
)
from mtlsynth.signals import SignalPrefix, make_sample, observation


def iset(horizon, *spans):
    return IntervalSet(Fr(horizon), tuple((Fr(l), Fr(r)) for l, r in spans))


def test_eventually_on_demo(demo_prefix):
    assert satisfaction_intervals(parse_formula("F[0,1] q"), demo_prefix) == iset(
        6, (0, 4), (5, 6)
    )


def test_disjunction_on_demo(demo_prefix):
    assert satisfaction_intervals(
        parse_formula("p | F[0,1] q"), demo_prefix
    ) == IntervalSet.full(Fr(6))


def test_until_worked_case():
    x = SignalPrefix.from_observation(
        observation(
            [
                ("0", []),
                ("1", ["a"]),
                ("3", []),
                ("4", ["b"]),
                ("5", ["a", "b"]),
                ("6", ["a"]),
                ("7", ["a", "b"]),
                ("8", ["b"]),
            ],
            "9",
        )
    )
    assert x.base_intervals("a") == iset(9, (1, 3), (5, 8))
    assert x.base_intervals("b") == iset(9, (4, 6), (7, 9))
    assert satisfaction_intervals(parse_formula("a U[0,3] b"), x) == iset(9, (5, 8))


def test_satisfies_at_boundaries(demo_prefix):
    assert satisfies_at(parse_formula("p | F[0,1] q"), demo_prefix, Fr(0))
    assert not satisfies_at(parse_formula("q"), demo_prefix, Fr(1))
    with pytest.raises(ValueError):
        satisfies_at(parse_formula("p"), demo_prefix, Fr(6))


def test_globally_separates_reports_witness():
    sample = make_sample(
        positive=[[("0", ["p"]), ("1", [])]],
        negative=[],
        alphabet=["p"],
        horizon="2",
    )
    verdict = globally_separates(parse_formula("p"), sample)
    assert not verdict.separates
    assert verdict.witness.label == "positive"
    assert verdict.witness.time == Fr(1)

    good = make_sample(
        positive=[[("0", ["p"])]],
        negative=[[("0", ["p"]), ("1", [])]],
        alphabet=["p"],
        horizon="2",
    )
    assert globally_separates(parse_formula("p"), good).separates


def test_globally_separates_negative_fails_when_satisfied_everywhere():
    sample = make_sample(
        positive=[[("0", ["p"])]],
        negative=[[("0", ["p"]), ("1", [])]],
        alphabet=["p"],
        horizon="2",
    )
    verdict = globally_separates(parse_formula("F[0,2] p"), sample)
    assert not verdict.separates
    assert verdict.witness.label == "negative"
    assert verdict.witness.time is None


def test_empty_negatives_vacuous():
    sample = make_sample(
        positive=[[("0", ["p"])]], negative=[], alphabet=["p"], horizon="2"
    )
    assert globally_separates(parse_formula("p"), sample).separates


def test_unknown_proposition_rejected(demo_sample):
    with pytest.raises(MonitorError):
        globally_separates(parse_formula("nope"), demo_sample)


def _grid_of_monitor(formula, prefix, step, count):
    intervals = satisfaction_intervals(formula, prefix)
    return [intervals.covers(k * step) for k in range(count)]


def test_monitor_matches_pointwise_oracle_randomized():
    rng = random.Random(20240811)
    alphabet = ["p", "q"]
    for case in range(120):
        horizon = Fr(rng.randint(2, 8))
        prefix = random_prefix(rng, alphabet, horizon, max_segments=5, denominator=2)
        formula = random_formula(rng, alphabet, 5, bound_limit=horizon, max_denominator=4)
        step, cells = truth_grid(formula, prefix)
        got = _grid_of_monitor(formula, prefix, step, len(cells))
        assert got == cells, (
            f"case {case}: {formula} on {prefix} diverges from the oracle"
        )


def test_interval_count_stays_within_size_bound():
    rng = random.Random(7)
    alphabet = ["p", "q"]
    for _ in range(150):
        horizon = Fr(rng.randint(2, 8))
        prefix = random_prefix(rng, alphabet, horizon, max_segments=6, denominator=2)
        formula = random_formula(rng, alphabet, 5, bound_limit=horizon)
        mu = max(
            1,
            max(len(prefix.base_intervals(p).spans) for p in alphabet),
        )
        count = len(satisfaction_intervals(formula, prefix).spans)
        assert count <= mu * size(formula)


def test_lookahead_indistinguishability_randomized():
    # A formula never tells apart prefixes identical on [0, its lookahead].
    rng = random.Random(99)
    alphabet = ["p", "q"]
    for _ in range(80):
        formula = random_formula(rng, alphabet, 4, bound_limit=Fr(2))
        reach = future_reach(formula)
        horizon = reach + Fr(rng.randint(1, 4))
        base = random_prefix(rng, alphabet, horizon, max_segments=4, denominator=2)
        twin = _retail(rng, base, reach, alphabet)
        assert satisfies_at(formula, base, Fr(0)) == satisfies_at(formula, twin, Fr(0))


def _retail(rng, base, keep, alphabet):
    """Copy `base` on [0, keep] and randomize the remainder."""
    points = [bp for bp in base.breakpoints if bp <= keep]
    values = list(base.values[: len(points)])
    cursor = keep + Fr(1, 2)
    while cursor < base.horizon and rng.random() < 0.7:
        value = frozenset(p for p in alphabet if rng.random() < 0.5)
        if value != values[-1]:
            points.append(cursor)
            values.append(value)
        cursor += Fr(1, 2)
    return SignalPrefix(tuple(points), tuple(values), base.horizon)


def test_false_verdicts_survive_extension():
    # A prefix that already refutes a formula keeps refuting it under any
    # piecewise-constant extension of the horizon.
    rng = random.Random(4242)
    alphabet = ["p", "q"]
    checked = 0
    while checked < 60:
        horizon = Fr(rng.randint(2, 5))
        prefix = random_prefix(rng, alphabet, horizon, max_segments=4)
        formula = random_formula(rng, alphabet, 4, bound_limit=horizon)
        if satisfies_at(formula, prefix, Fr(0)):
            continue
        checked += 1
        points = list(prefix.breakpoints)
        values = list(prefix.values)
        for k in range(rng.randint(1, 2)):
            value = frozenset(p for p in alphabet if rng.random() < 0.5)
            if value != values[-1]:
                points.append(horizon + k)
                values.append(value)
        extended = SignalPrefix(tuple(points), tuple(values), horizon + 2)
        assert not satisfies_at(formula, extended, Fr(0))
