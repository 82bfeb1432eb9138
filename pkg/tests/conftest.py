"""Shared fixtures: canonical prefixes, samples, and a solver handle."""

from __future__ import annotations

import pytest

from mtlsynth.signals import SignalPrefix, make_sample, observation
from mtlsynth.solver import SolverError, resolve_solver


@pytest.fixture(scope="session")
def demo_prefix() -> SignalPrefix:
    """p on [0,2) and [3,6); q on [0,1) and [2,4); T = 6."""
    return SignalPrefix.from_observation(
        observation(
            [
                ("0", ["p", "q"]),
                ("1", ["p"]),
                ("2", ["q"]),
                ("3", ["p", "q"]),
                ("4", ["p"]),
            ],
            "6",
        )
    )


@pytest.fixture(scope="session")
def demo_sample(demo_prefix):
    return make_sample(
        positive=[demo_prefix], negative=[], alphabet=["p", "q"], horizon="6"
    )


@pytest.fixture(scope="session")
def lookahead_sample():
    """One positive <(0,{q}),(2,{})>, one negative <(0,{q})>, T = 4: separable
    with lookahead 2 but not with lookahead 1."""
    return make_sample(
        positive=[[("0", ["q"]), ("2", [])]],
        negative=[[("0", ["q"])]],
        alphabet=["q"],
        horizon="4",
    )


@pytest.fixture(scope="session")
def solver_config():
    try:
        return resolve_solver()
    except SolverError as exc:  # pragma: no cover - environment-dependent
        pytest.skip(f"no SMT solver available: {exc}")
