"""Observations, piecewise-constant signal prefixes, infixes and samples.

A signal prefix maps [0, T) to sets of propositions and is constant between
breakpoints.  Prefixes are canonical (adjacent equal-valued segments merged on
construction), so structural equality is pointwise equality.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .intervals import IntervalSet
from .rationals import format_rational, parse_rational


class SignalError(ValueError):
    """Ill-formed observation, prefix, or sample."""


@dataclass(frozen=True)
class Observation:
    """Timestamped readings: at time t_i the propositions delta_i hold."""

    entries: tuple[tuple[Fraction, frozenset[str]], ...]
    horizon: Fraction

    def __post_init__(self):
        if not self.entries:
            raise SignalError("observation needs at least one entry")
        if self.entries[0][0] != 0:
            raise SignalError("first observation time must be 0")
        for (t1, _), (t2, _) in zip(self.entries, self.entries[1:]):
            if t1 >= t2:
                raise SignalError("observation times must be strictly increasing")
        if self.entries[-1][0] >= self.horizon:
            raise SignalError(
                f"last observation time {self.entries[-1][0]} must precede horizon {self.horizon}"
            )


def observation(pairs, horizon) -> Observation:
    entries = tuple(
        (parse_rational(t), frozenset(props)) for t, props in pairs
    )
    return Observation(entries, parse_rational(horizon))


@dataclass(frozen=True)
class SignalPrefix:
    """Canonical piecewise-constant function [0, T) -> sets of propositions."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[frozenset[str], ...]
    horizon: Fraction

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values) or not self.breakpoints:
            raise SignalError("breakpoints and values must align and be non-empty")
        if self.breakpoints[0] != 0:
            raise SignalError("first breakpoint must be 0")
        for b1, b2 in zip(self.breakpoints, self.breakpoints[1:]):
            if b1 >= b2:
                raise SignalError("breakpoints must be strictly increasing")
        if self.breakpoints[-1] >= self.horizon:
            raise SignalError("breakpoints must precede the horizon")
        for v1, v2 in zip(self.values, self.values[1:]):
            if v1 == v2:
                raise SignalError(
                    "adjacent segments with equal values; merge them (canonical form)"
                )

    @staticmethod
    def from_observation(obs: Observation) -> "SignalPrefix":
        """Interpolate: each reading holds until the next one (last until T)."""
        points: list[Fraction] = []
        values: list[frozenset[str]] = []
        for t, delta in obs.entries:
            if values and values[-1] == delta:
                continue  # merge equal adjacent segments
            points.append(t)
            values.append(delta)
        return SignalPrefix(tuple(points), tuple(values), obs.horizon)

    def segment_index(self, t: Fraction) -> int:
        t = Fraction(t)
        if not 0 <= t < self.horizon:
            raise SignalError(f"time point {t} outside [0,{self.horizon})")
        return bisect_right(self.breakpoints, t) - 1

    def value_at(self, t) -> frozenset[str]:
        return self.values[self.segment_index(t)]

    def propositions(self) -> set[str]:
        out: set[str] = set()
        for v in self.values:
            out |= v
        return out

    def base_intervals(self, proposition: str) -> IntervalSet:
        """Maximal disjoint intervals on which `proposition` holds."""
        spans = []
        start = None
        for i, value in enumerate(self.values):
            holds = proposition in value
            if holds and start is None:
                start = self.breakpoints[i]
            elif not holds and start is not None:
                spans.append((start, self.breakpoints[i]))
                start = None
        if start is not None:
            spans.append((start, self.horizon))
        return IntervalSet(self.horizon, tuple(spans))

    def infix(self, t1, t2) -> "Infix":
        """Restriction to [t1, t2], shifted to start at 0; closed right end."""
        t1, t2 = Fraction(t1), Fraction(t2)
        if not (0 <= t1 <= t2 < self.horizon):
            raise SignalError(f"infix window [{t1},{t2}] outside 0 <= t1 <= t2 < T")
        points: list[Fraction] = []
        values: list[frozenset[str]] = []
        for bp, value in zip(self.breakpoints, self.values):
            if bp <= t1:
                points, values = [Fraction(0)], [value]
            elif bp < t2:
                points.append(bp - t1)
                values.append(value)
        merged_p: list[Fraction] = []
        merged_v: list[frozenset[str]] = []
        for p, v in zip(points, values):
            if merged_v and merged_v[-1] == v:
                continue
            merged_p.append(p)
            merged_v.append(v)
        return Infix(t2 - t1, tuple(merged_p), tuple(merged_v), self.value_at(t2))

    def __str__(self):
        parts = [
            f"[{format_rational(bp)}:{{{','.join(sorted(v))}}}"
            for bp, v in zip(self.breakpoints, self.values)
        ]
        return " ".join(parts) + f" T={format_rational(self.horizon)}"


@dataclass(frozen=True)
class Infix:
    """A prefix restricted to a closed window, as a function on [0, length].

    Segments cover [0, length) half-open; `end_value` is the value at the
    closed right endpoint.  Canonical form makes equality pointwise.
    """

    length: Fraction
    breakpoints: tuple[Fraction, ...]
    values: tuple[frozenset[str], ...]
    end_value: frozenset[str]

    def value_at(self, t) -> frozenset[str]:
        t = Fraction(t)
        if not 0 <= t <= self.length:
            raise SignalError(f"time point {t} outside [0,{self.length}]")
        if t == self.length:
            return self.end_value
        idx = 0
        for i, bp in enumerate(self.breakpoints):
            if bp <= t:
                idx = i
        return self.values[idx]


@dataclass(frozen=True)
class Sample:
    """Labeled prefixes sharing one horizon; positives and negatives disjoint."""

    positive: tuple[SignalPrefix, ...]
    negative: tuple[SignalPrefix, ...]
    alphabet: tuple[str, ...]
    horizon: Fraction

    def __post_init__(self):
        for prefix in self.positive + self.negative:
            if prefix.horizon != self.horizon:
                raise SignalError("all prefixes in a sample must share the horizon")
            extra = prefix.propositions() - set(self.alphabet)
            if extra:
                raise SignalError(f"prefix uses propositions outside the alphabet: {sorted(extra)}")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise SignalError("duplicate propositions in alphabet")
        overlap = set(self.positive) & set(self.negative)
        if overlap:
            raise SignalError("a prefix occurs with both labels (positive and negative)")

    @property
    def prefixes(self) -> tuple[SignalPrefix, ...]:
        return self.positive + self.negative

    def all_breakpoints(self) -> list[Fraction]:
        points = {Fraction(0)}
        for prefix in self.prefixes:
            points.update(prefix.breakpoints)
        return sorted(points)


def make_sample(positive, negative, alphabet, horizon) -> Sample:
    horizon = parse_rational(horizon)

    def to_prefix(item):
        if isinstance(item, SignalPrefix):
            return item
        if isinstance(item, Observation):
            return SignalPrefix.from_observation(item)
        return SignalPrefix.from_observation(observation(item, horizon))

    return Sample(
        tuple(to_prefix(x) for x in positive),
        tuple(to_prefix(y) for y in negative),
        tuple(alphabet),
        horizon,
    )


# --- JSON wire format -------------------------------------------------------
#
# {"T": "6", "propositions": ["p", "q"],
#  "positive": [[["0", ["p", "q"]], ["2", ["q"]]], ...],
#  "negative": [...]}
#
# Times are decimal-or-fraction strings (integers also accepted) parsed to
# exact rationals; each prefix is an observation: a list of [time, [props]].


def sample_from_dict(data: dict) -> Sample:
    try:
        horizon = parse_rational(data["T"])
        alphabet = tuple(data["propositions"])
        groups = {}
        for key in ("positive", "negative"):
            groups[key] = [
                observation([(t, props) for t, props in obs], horizon)
                for obs in data.get(key, [])
            ]
    except (KeyError, TypeError, ValueError) as exc:
        raise SignalError(f"malformed sample: {exc}") from exc
    return make_sample(groups["positive"], groups["negative"], alphabet, horizon)


def sample_to_dict(sample: Sample) -> dict:
    def encode(prefix: SignalPrefix):
        return [
            [format_rational(bp), sorted(value)]
            for bp, value in zip(prefix.breakpoints, prefix.values)
        ]

    return {
        "T": format_rational(sample.horizon),
        "propositions": list(sample.alphabet),
        "positive": [encode(x) for x in sample.positive],
        "negative": [encode(y) for y in sample.negative],
    }


def load_sample(path) -> Sample:
    with open(Path(path), "r", encoding="utf-8") as handle:
        return sample_from_dict(json.load(handle))


def save_sample(sample: Sample, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as handle:
        json.dump(sample_to_dict(sample), handle, indent=2)
        handle.write("\n")
