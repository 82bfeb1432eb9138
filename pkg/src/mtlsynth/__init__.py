"""Learn minimal bounded-lookahead MTL formulas from labeled signal prefixes.

The package bundles an interval-based monitor (the semantic ground truth),
an infix-separability existence check, an LRA encoding of the bounded-size
formula search, an external SMT solver backend, an iterative-deepening
synthesis loop, and a scikit-learn style classifier wrapper.
"""

from .estimator import MtlFormulaClassifier, as_signal_prefix
from .formulas import (
    FormulaError,
    MtlFormula,
    always,
    conj,
    disj,
    eventually,
    future_reach,
    neg,
    parse_formula,
    print_formula,
    prop,
    size,
    until,
)
from .intervals import IntervalSet, minkowski_minus
from .monitoring import globally_separates, satisfaction_intervals, satisfies_at
from .separability import infix_occurs_in, is_infix_separable
from .signals import (
    Observation,
    Sample,
    SignalError,
    SignalPrefix,
    load_sample,
    make_sample,
    observation,
    sample_from_dict,
    sample_to_dict,
    save_sample,
)
from .solver import SolverConfig, check_sat, resolve_solver
from .synthesis import SynthesisResult, synthesize

__version__ = "0.1.0"

__all__ = [
    "FormulaError",
    "IntervalSet",
    "MtlFormula",
    "MtlFormulaClassifier",
    "Observation",
    "Sample",
    "SignalError",
    "SignalPrefix",
    "SolverConfig",
    "SynthesisResult",
    "always",
    "as_signal_prefix",
    "check_sat",
    "conj",
    "disj",
    "eventually",
    "future_reach",
    "globally_separates",
    "infix_occurs_in",
    "is_infix_separable",
    "load_sample",
    "make_sample",
    "minkowski_minus",
    "neg",
    "observation",
    "parse_formula",
    "print_formula",
    "prop",
    "resolve_solver",
    "sample_from_dict",
    "sample_to_dict",
    "satisfaction_intervals",
    "satisfies_at",
    "save_sample",
    "size",
    "synthesize",
    "until",
]
