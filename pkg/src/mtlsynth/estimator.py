"""Scikit-learn style front end: learn a temporal formula as a classifier.

`MtlFormulaClassifier.fit(X, y)` treats label 1 as "the learned formula must
hold at every time point of this prefix" and label 0 as "it must fail
somewhere"; `predict` monitors new prefixes against the learned formula and
returns those same labels.  Inputs are signal prefixes: `SignalPrefix` or
`Observation` objects, or raw observation lists of (time, propositions)
pairs interpreted against the `horizon` parameter.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .formulas import print_formula
from .monitoring import satisfaction_intervals
from .rationals import parse_rational
from .signals import Observation, Sample, SignalPrefix, observation
from .solver import resolve_solver
from .synthesis import synthesize


def as_signal_prefix(item, horizon=None) -> SignalPrefix:
    """Input validation helper: accept a prefix in any supported form."""
    if isinstance(item, SignalPrefix):
        return item
    if isinstance(item, Observation):
        return SignalPrefix.from_observation(item)
    if horizon is None:
        raise ValueError(
            "raw observation lists need an explicit horizon; pass horizon=..."
        )
    return SignalPrefix.from_observation(observation(item, horizon))


class MtlFormulaClassifier(ClassifierMixin, BaseEstimator):
    """Learns a minimal bounded-lookahead temporal formula separating the
    label-1 prefixes (formula holds throughout) from the label-0 ones.

    Parameters
    ----------
    reach_bound : rational-like
        Maximum lookahead the learned formula may need (required).
    horizon : rational-like, optional
        Domain end T for raw observation-list inputs.
    max_size : int
        Cap on the formula size search.
    margin : int
        Extra interval slots per encoded node (safety headroom).
    solver_command : str or list, optional
        External SMT solver command; autodetected when omitted.
    timeout : float, optional
        Per-query solver timeout in seconds.
    """

    def __init__(
        self,
        reach_bound=None,
        horizon=None,
        max_size=6,
        margin=2,
        solver_command=None,
        timeout=None,
    ):
        self.reach_bound = reach_bound
        self.horizon = horizon
        self.max_size = max_size
        self.margin = margin
        self.solver_command = solver_command
        self.timeout = timeout

    def _build_sample(self, X, y) -> Sample:
        if self.reach_bound is None:
            raise ValueError("reach_bound must be set before fitting")
        labels = np.asarray(y)
        if len(labels) != len(X):
            raise ValueError("X and y have different lengths")
        if not set(np.unique(labels)) <= {0, 1}:
            raise ValueError("labels must be 0 or 1")
        horizon = None if self.horizon is None else parse_rational(self.horizon)
        prefixes = [as_signal_prefix(item, horizon) for item in X]
        if not prefixes:
            raise ValueError("need at least one prefix")
        horizons = {p.horizon for p in prefixes}
        if len(horizons) != 1:
            raise ValueError(f"prefixes disagree on the horizon: {sorted(horizons)}")
        alphabet = sorted(set().union(*[p.propositions() for p in prefixes]) or {"p"})
        positive = tuple(p for p, l in zip(prefixes, labels) if l == 1)
        negative = tuple(p for p, l in zip(prefixes, labels) if l == 0)
        return Sample(positive, negative, tuple(alphabet), prefixes[0].horizon)

    def fit(self, X, y):
        sample = self._build_sample(X, y)
        config = resolve_solver(self.solver_command)
        config.timeout = self.timeout
        result = synthesize(
            sample,
            parse_rational(self.reach_bound),
            max_size=self.max_size,
            solver=config,
            margin=self.margin,
        )
        if result.status == "no_solution":
            raise ValueError(
                "no separating formula exists within the lookahead bound: "
                + (result.reason or "")
            )
        if result.status != "found":
            raise RuntimeError(f"synthesis did not converge: {result.reason}")
        self.formula_ = result.formula
        self.formula_text_ = print_formula(result.formula)
        self.size_ = result.size
        self.future_reach_ = result.reach
        self.result_ = result
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        if not hasattr(self, "formula_"):
            raise AttributeError("fit the classifier before calling predict")
        horizon = None if self.horizon is None else parse_rational(self.horizon)
        out = []
        for item in X:
            prefix = as_signal_prefix(item, horizon)
            out.append(1 if satisfaction_intervals(self.formula_, prefix).is_full() else 0)
        return np.asarray(out)
