"""Iterative-deepening synthesis of a minimal globally separating formula.

The loop first rules out hopeless inputs with the infix-separability check
(no solver involved), then asks the SMT backend for formulas of size
1, 2, ... until the first satisfiable size.  Every decoded formula is
re-verified with the monitor before it is returned; a verification failure
is a hard error, never a silent skip, because skipping a size would void
the minimality guarantee.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .encoding import Encoding, EncodingError, verify_model
from .formulas import MtlFormula, future_reach, print_formula
from .lra import formula_stats
from .monitoring import globally_separates
from .rationals import format_rational
from .separability import SeparabilityResult, is_infix_separable
from .signals import Sample
from .solver import SolverConfig, check_sat, resolve_solver


@dataclass
class SizeAttempt:
    size: int
    status: str
    seconds: float
    atoms: int
    real_variables: int
    bool_variables: int

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "status": self.status,
            "seconds": round(self.seconds, 3),
            "atoms": self.atoms,
            "real_variables": self.real_variables,
            "bool_variables": self.bool_variables,
        }


@dataclass
class SynthesisResult:
    status: str  # "found" | "no_solution" | "aborted"
    formula: MtlFormula | None = None
    size: int | None = None
    reach: Fraction | None = None
    reason: str | None = None
    separability: SeparabilityResult | None = None
    attempts: list[SizeAttempt] = field(default_factory=list)

    @property
    def solver_calls(self) -> int:
        return len(self.attempts)

    def to_dict(self) -> dict:
        data: dict = {"schema": 1, "status": self.status}
        if self.formula is not None:
            data["formula"] = print_formula(self.formula)
            data["size"] = self.size
            data["future_reach"] = format_rational(self.reach)
        if self.reason is not None:
            data["reason"] = self.reason
        data["solver_calls"] = self.solver_calls
        data["attempts"] = [a.to_dict() for a in self.attempts]
        return data


def synthesize(
    sample: Sample,
    reach_bound,
    max_size: int = 6,
    solver: SolverConfig | None = None,
    margin: int = 2,
) -> SynthesisResult:
    """Find a minimal-size globally separating formula with lookahead within
    `reach_bound`, or report that none exists / the search was cut off."""
    reach_bound = Fraction(reach_bound)
    if reach_bound < 0:
        raise ValueError("lookahead bound must be non-negative")
    if max_size < 1:
        raise ValueError("max_size must be at least 1")

    separability = is_infix_separable(sample, reach_bound)
    if not separability.separable:
        return SynthesisResult(
            "no_solution",
            reason=(
                "sample is not infix-separable at this lookahead bound "
                f"(negative prefix {separability.failing_negative} has no "
                "distinguishing window)"
            ),
            separability=separability,
        )

    config = solver if solver is not None else resolve_solver()
    attempts: list[SizeAttempt] = []
    for n in range(1, max_size + 1):
        encoding = Encoding(sample, reach_bound, n, margin=margin)
        constraints = encoding.build()
        stats = formula_stats(constraints)
        started = time.monotonic()
        result = check_sat(constraints, config)
        attempts.append(
            SizeAttempt(
                n,
                result.status,
                time.monotonic() - started,
                stats["atoms"],
                stats["real_variables"],
                stats["bool_variables"],
            )
        )
        if result.is_unsat:
            continue
        if not result.is_sat:
            return SynthesisResult(
                "aborted",
                reason=f"solver verdict unknown at size {n}: {result.reason}",
                separability=separability,
                attempts=attempts,
            )
        formula = encoding.decode(result.model)
        _verify(encoding, result.model, formula, sample, reach_bound, config)
        return SynthesisResult(
            "found",
            formula=formula,
            size=n,
            reach=future_reach(formula),
            separability=separability,
            attempts=attempts,
        )
    return SynthesisResult(
        "aborted",
        reason=(
            f"a separating formula exists but none was found up to size {max_size}; "
            "raise --max-size"
        ),
        separability=separability,
        attempts=attempts,
    )


def _verify(encoding, model, formula, sample, reach_bound, config) -> None:
    """Decoded formulas never leave unchecked: interval slots, separation and
    lookahead are all re-validated against the independent monitor."""
    hint = ""
    if config.dump_dir is not None:
        hint = f" (queries dumped under {config.dump_dir})"
    verify_model(encoding, model, formula)
    verdict = globally_separates(formula, sample)
    if not verdict.separates:
        raise EncodingError(
            f"decoded formula {print_formula(formula)} fails monitor verification "
            f"on {verdict.witness.label} prefix {verdict.witness.index}{hint}"
        )
    reach = future_reach(formula)
    if reach > reach_bound:
        raise EncodingError(
            f"decoded formula {print_formula(formula)} has lookahead "
            f"{format_rational(reach)} above the bound {format_rational(reach_bound)}{hint}"
        )
