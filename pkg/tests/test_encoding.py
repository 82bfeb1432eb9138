import random
from fractions import Fraction as Fr

import pytest

from gen import random_formula, random_prefix, sample_labeled_by

from mtlsynth.encoding import Encoding, EncodingError, interval_slot_bounds, verify_model
from mtlsynth.formulas import future_reach, parse_formula, print_formula, size
from mtlsynth.lra import BoolVar, Model, Not, all_of, any_of, eq
from mtlsynth.monitoring import globally_separates, satisfaction_intervals
from mtlsynth.signals import make_sample
from mtlsynth.solver import check_sat


def test_slot_bounds(demo_sample):
    assert interval_slot_bounds(demo_sample, 3) == [2 * 3 + 2]
    flat = make_sample(
        positive=[[("0", ["p"])]], negative=[], alphabet=["p"], horizon="2"
    )
    assert interval_slot_bounds(flat, 1) == [1 + 2]
    silent = make_sample(
        positive=[[("0", [])]], negative=[], alphabet=["p"], horizon="2"
    )
    assert interval_slot_bounds(silent, 4) == [4 + 2]


def _enumerate_skeletons(sample, n, solver_config, reach=Fr(4)):
    """All decodable formula shapes over the structural+semantic constraints,
    ignoring the specific interval bounds a model picks."""
    enc = Encoding(sample, reach, n)
    base = enc.build()
    seen = set()
    blockers = []
    structure_bits = [enc.label_var(i, lab) for i in range(1, n + 1) for lab in enc.labels]
    structure_bits += [enc.left_child(i, j) for i in range(1, n + 1) for j in range(1, i)]
    structure_bits += [enc.right_child(i, j) for i in range(1, n + 1) for j in range(1, i)]
    for _ in range(64):
        result = check_sat(all_of([base] + blockers), solver_config)
        if not result.is_sat:
            return seen
        formula = enc.decode(result.model)
        seen.add(_skeleton(formula))
        assignment = [
            bit if result.model.boolean(bit.name) else Not(bit)
            for bit in structure_bits
        ]
        blockers.append(any_of([Not(a) if not isinstance(a, Not) else a.arg for a in assignment]))
    raise AssertionError("enumeration did not converge")


def _skeleton(formula) -> str:
    if formula.kind == "prop":
        return formula.name
    inner = ",".join(_skeleton(c) for c in formula.children)
    return f"{formula.kind}({inner})"


def test_structural_size1_models_are_propositions(solver_config):
    sample = make_sample(
        positive=[[("0", ["p"])]],
        negative=[[("0", ["p"]), ("1", [])]],
        alphabet=["p", "q"],
        horizon="2",
    )
    # with the separation constraint every size-1 model decodes to `p`
    shapes = _enumerate_skeletons(sample, 1, solver_config, reach=Fr(0))
    assert shapes == {"p"}


def test_structural_size2_shapes(solver_config):
    # Positives and negatives chosen so every well-formed shape can separate.
    sample = make_sample(
        positive=[[("0", ["p"]), ("1", ["p", "q"])]],
        negative=[[("0", ["q"]), ("1", [])]],
        alphabet=["p", "q"],
        horizon="2",
    )
    shapes = _enumerate_skeletons(sample, 2, solver_config)
    allowed = {
        "p",
        "q",
        "not(p)",
        "not(q)",
        "finally(p)",
        "finally(q)",
        "globally(p)",
        "globally(q)",
        "and(p,p)",
        "and(q,q)",
        "or(p,p)",
        "or(q,q)",
        "until(p,p)",
        "until(q,q)",
    }
    assert shapes <= allowed
    assert "p" in shapes  # node 2 labelled with a proposition, node 1 dangling
    assert any(shape.startswith(("finally", "globally")) for shape in shapes)


def test_nnf_blocks_negation_of_operator(solver_config):
    sample = make_sample(
        positive=[[("0", ["p"])]], negative=[], alphabet=["p", "q"], horizon="2"
    )
    enc = Encoding(sample, Fr(1), 2)
    phi = all_of(
        [
            enc.build_structural(),
            enc.label_var(2, "not"),
            enc.left_child(2, 1),
            Not(enc.label_var(1, "p")),
            Not(enc.label_var(1, "q")),
        ]
    )
    assert check_sat(phi, solver_config).is_unsat


def test_reach_constraints_cap_bounds(solver_config):
    sample = make_sample(
        positive=[[("0", ["p"])]], negative=[], alphabet=["p"], horizon="3"
    )

    def shape(reach):
        enc = Encoding(sample, reach, 2)
        return all_of(
            [
                enc.build_structural(),
                enc.build_future_reach(),
                enc.label_var(2, "finally"),
                enc.left_child(2, 1),
                eq(enc.hi_bound(2), 2),
            ]
        )

    assert check_sat(shape(Fr(2)), solver_config).is_sat
    assert check_sat(shape(Fr(1)), solver_config).is_unsat


def test_no_size1_separator_for_gapped_positives(demo_sample, solver_config):
    enc = Encoding(demo_sample, Fr(2), 1)
    assert check_sat(enc.build(), solver_config).is_unsat


@pytest.mark.parametrize(
    "text,reach",
    [
        ("G[1,2] q", 2),
        ("p U[0,3] q", 3),
        ("!q | F[0,1] p", 1),
    ],
)
def test_pinned_root_slots_match_monitor(text, reach, solver_config):
    formula = parse_formula(text)
    sample = make_sample(
        positive=[
            [("0", ["p", "q"]), ("1", ["p"]), ("2", ["q"]), ("3", ["p", "q"]), ("4", ["p"])]
        ],
        negative=[],
        alphabet=["p", "q"],
        horizon="6",
    )
    enc = Encoding(sample, Fr(reach), size(formula))
    phi = all_of(
        [
            enc.build_structural(),
            enc.build_future_reach(),
            enc._semantic_for_prefix(1),
            enc.assume_structure(formula),
        ]
    )
    result = check_sat(phi, solver_config)
    assert result.is_sat
    got = enc.root_slots(result.model, 1)
    want = list(satisfaction_intervals(formula, sample.positive[0]).spans)
    assert got == want


def test_sound_and_complete_on_injected_formulas(solver_config):
    rng = random.Random(321)
    done = 0
    while done < 5:
        formula = random_formula(rng, ["p", "q"], 3, bound_limit=Fr(3), max_denominator=2)
        horizon = Fr(rng.randint(3, 5))
        prefixes = [
            random_prefix(rng, ["p", "q"], horizon, max_segments=3)
            for _ in range(4)
        ]
        sample = sample_labeled_by(formula, prefixes, ["p", "q"])
        if sample is None:
            continue
        reach = max(future_reach(formula), Fr(0))
        n = size(formula)
        enc = Encoding(sample, reach, n)
        result = check_sat(enc.build(), solver_config)
        # completeness: the injected formula itself is a size-n witness
        assert result.is_sat, f"injected {print_formula(formula)} not found at size {n}"
        decoded = enc.decode(result.model)
        # soundness: whatever came back must itself separate within budget
        verify_model(enc, result.model, decoded)
        assert globally_separates(decoded, sample).separates
        assert future_reach(decoded) <= reach
        assert size(decoded) <= n
        done += 1


def test_decode_rejects_multilabel_model(demo_sample):
    enc = Encoding(demo_sample, Fr(1), 1)
    model = Model({"x1_P_p": True, "x1_P_q": True})
    with pytest.raises(EncodingError):
        enc.decode(model)


def test_assume_structure_size_mismatch(demo_sample):
    enc = Encoding(demo_sample, Fr(1), 3)
    with pytest.raises(ValueError):
        enc.assume_structure(parse_formula("p"))
