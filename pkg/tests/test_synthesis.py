from fractions import Fraction as Fr

import pytest

from brute_force import minimal_separator_size

from mtlsynth.formulas import future_reach, print_formula
from mtlsynth.monitoring import globally_separates
from mtlsynth.signals import make_sample
from mtlsynth.synthesis import synthesize


def test_no_solution_without_any_solver_call(lookahead_sample, solver_config):
    result = synthesize(lookahead_sample, Fr(1), solver=solver_config)
    assert result.status == "no_solution"
    assert result.solver_calls == 0
    assert "negative prefix 0" in result.reason


def test_unique_size1_separator(solver_config):
    sample = make_sample(
        positive=[[("0", ["p"])]],
        negative=[[("0", ["p"]), ("1", [])]],
        alphabet=["p"],
        horizon="2",
    )
    result = synthesize(sample, Fr(0), solver=solver_config)
    assert result.status == "found"
    assert result.size == 1
    assert print_formula(result.formula) == "p"
    assert result.attempts[0].status == "sat"
    oracle = minimal_separator_size(sample, Fr(0))
    assert oracle is not None and oracle[0] == 1


def test_minimal_size_two(solver_config):
    # No proposition separates; a negated one does.
    sample = make_sample(
        positive=[[("0", [])]],
        negative=[[("0", []), ("1", ["p"])]],
        alphabet=["p"],
        horizon="2",
    )
    result = synthesize(sample, Fr(0), solver=solver_config)
    assert result.status == "found"
    assert result.size == 2
    assert [a.status for a in result.attempts] == ["unsat", "sat"]
    verdict = globally_separates(result.formula, sample)
    assert verdict.separates
    oracle = minimal_separator_size(sample, Fr(0))
    assert oracle is not None and oracle[0] == 2


def test_found_formula_respects_reach_bound(lookahead_sample, solver_config):
    result = synthesize(lookahead_sample, Fr(2), solver=solver_config)
    assert result.status == "found"
    assert future_reach(result.formula) <= 2
    assert globally_separates(result.formula, lookahead_sample).separates


def test_aborts_at_size_cap(solver_config):
    sample = make_sample(
        positive=[[("0", [])]],
        negative=[[("0", []), ("1", ["p"])]],
        alphabet=["p"],
        horizon="2",
    )
    result = synthesize(sample, Fr(0), max_size=1, solver=solver_config)
    assert result.status == "aborted"
    assert "size 1" in result.reason
    assert result.solver_calls == 1


def test_rejects_bad_arguments(demo_sample, solver_config):
    with pytest.raises(ValueError):
        synthesize(demo_sample, Fr(-1), solver=solver_config)
    with pytest.raises(ValueError):
        synthesize(demo_sample, Fr(1), max_size=0, solver=solver_config)


def test_result_json_shape(solver_config):
    sample = make_sample(
        positive=[[("0", ["p"])]],
        negative=[[("0", ["p"]), ("1", [])]],
        alphabet=["p"],
        horizon="2",
    )
    result = synthesize(sample, Fr(0), solver=solver_config)
    data = result.to_dict()
    assert data["schema"] == 1
    assert data["status"] == "found"
    assert data["formula"] == "p"
    assert data["size"] == 1
    assert data["future_reach"] == "0"
    assert data["attempts"][0]["status"] == "sat"
