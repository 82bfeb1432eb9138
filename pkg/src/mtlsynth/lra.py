"""Quantifier-free linear real arithmetic with Boolean structure.

Terms are affine expressions over named real variables with exact rational
coefficients.  Formulas combine comparison atoms, Boolean variables and the
usual connectives (including if-then-else).  The module emits SMT-LIB2
scripts (logic QF_LRA), parses solver models back to exact rationals, and
evaluates formulas under a model; the evaluator is the ground truth used to
validate every model a solver returns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LraError(ValueError):
    pass


# --- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class LinTerm:
    """Affine expression: sum of coeff*var plus a rational constant."""

    coeffs: tuple[tuple[str, Fraction], ...]
    const: Fraction

    @staticmethod
    def build(coeffs: dict[str, Fraction], const) -> "LinTerm":
        cleaned = tuple(sorted((v, c) for v, c in coeffs.items() if c != 0))
        return LinTerm(cleaned, Fraction(const))

    def __add__(self, other) -> "LinTerm":
        other = as_term(other)
        merged = dict(self.coeffs)
        for v, c in other.coeffs:
            merged[v] = merged.get(v, Fraction(0)) + c
        return LinTerm.build(merged, self.const + other.const)

    def __sub__(self, other) -> "LinTerm":
        return self + (as_term(other) * -1)

    def __mul__(self, scalar) -> "LinTerm":
        scalar = Fraction(scalar)
        return LinTerm.build({v: c * scalar for v, c in self.coeffs}, self.const * scalar)

    __radd__ = __add__
    __rmul__ = __mul__

    def variables(self) -> set[str]:
        return {v for v, _ in self.coeffs}


def var(name: str) -> LinTerm:
    return LinTerm(((name, Fraction(1)),), Fraction(0))


def rat(value) -> LinTerm:
    return LinTerm((), Fraction(value))


def as_term(value) -> LinTerm:
    if isinstance(value, LinTerm):
        return value
    return rat(value)


# --- formulas ---------------------------------------------------------------

_OPS = ("<", "<=", "=", ">=", ">")


@dataclass(frozen=True)
class Atom:
    op: str
    left: LinTerm
    right: LinTerm

    def __post_init__(self):
        if self.op not in _OPS:
            raise LraError(f"unknown comparison {self.op!r}")


@dataclass(frozen=True)
class BoolVar:
    name: str


@dataclass(frozen=True)
class BoolConst:
    value: bool


TRUE = BoolConst(True)
FALSE = BoolConst(False)


@dataclass(frozen=True)
class Not:
    arg: "LraFormula"


@dataclass(frozen=True)
class And:
    args: tuple["LraFormula", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["LraFormula", ...]


@dataclass(frozen=True)
class Implies:
    left: "LraFormula"
    right: "LraFormula"


@dataclass(frozen=True)
class Iff:
    left: "LraFormula"
    right: "LraFormula"


@dataclass(frozen=True)
class Ite:
    cond: "LraFormula"
    then: "LraFormula"
    orelse: "LraFormula"


LraFormula = Atom | BoolVar | BoolConst | Not | And | Or | Implies | Iff | Ite


def _cmp(op: str, left, right) -> Atom:
    return Atom(op, as_term(left), as_term(right))


def eq(left, right) -> Atom:
    return _cmp("=", left, right)


def le(left, right) -> Atom:
    return _cmp("<=", left, right)


def lt(left, right) -> Atom:
    return _cmp("<", left, right)


def ge(left, right) -> Atom:
    return _cmp(">=", left, right)


def gt(left, right) -> Atom:
    return _cmp(">", left, right)


def all_of(parts) -> LraFormula:
    flat: list[LraFormula] = []
    for part in parts:
        if isinstance(part, BoolConst):
            if not part.value:
                return FALSE
            continue
        if isinstance(part, And):
            flat.extend(part.args)
        else:
            flat.append(part)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def any_of(parts) -> LraFormula:
    flat: list[LraFormula] = []
    for part in parts:
        if isinstance(part, BoolConst):
            if part.value:
                return TRUE
            continue
        if isinstance(part, Or):
            flat.extend(part.args)
        else:
            flat.append(part)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def implies(left, right) -> LraFormula:
    if isinstance(left, BoolConst):
        return right if left.value else TRUE
    if isinstance(right, BoolConst) and right.value:
        return TRUE
    return Implies(left, right)


def mk_max(left, right, fresh_name: str) -> tuple[LinTerm, LraFormula]:
    """A fresh variable constrained to equal max(left, right)."""
    left, right = as_term(left), as_term(right)
    m = var(fresh_name)
    defining = all_of(
        [ge(m, left), ge(m, right), any_of([eq(m, left), eq(m, right)])]
    )
    return m, defining


# --- variable collection and emission ---------------------------------------


def collect_variables(formula: LraFormula) -> tuple[set[str], set[str]]:
    """All (real, bool) variable names; raises on a name used with both sorts."""
    reals: set[str] = set()
    bools: set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            reals |= node.left.variables() | node.right.variables()
        elif isinstance(node, BoolVar):
            bools.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.extend(node.args)
        elif isinstance(node, (Implies, Iff)):
            stack.extend((node.left, node.right))
        elif isinstance(node, Ite):
            stack.extend((node.cond, node.then, node.orelse))
    clash = reals & bools
    if clash:
        raise LraError(f"variables used as both Real and Bool: {sorted(clash)}")
    return reals, bools


def _rational_sexp(value: Fraction) -> str:
    def plain(v: Fraction) -> str:
        if v.denominator == 1:
            return f"{v.numerator}.0"
        return f"(/ {v.numerator} {v.denominator})"

    if value < 0:
        return f"(- {plain(-value)})"
    return plain(value)


def _term_sexp(term: LinTerm) -> str:
    parts = []
    if term.const != 0 or not term.coeffs:
        parts.append(_rational_sexp(term.const))
    for name, coeff in term.coeffs:
        if coeff == 1:
            parts.append(name)
        else:
            parts.append(f"(* {_rational_sexp(coeff)} {name})")
    if len(parts) == 1:
        return parts[0]
    return f"(+ {' '.join(parts)})"


def _formula_sexp(node: LraFormula) -> str:
    if isinstance(node, BoolConst):
        return "true" if node.value else "false"
    if isinstance(node, BoolVar):
        return node.name
    if isinstance(node, Atom):
        return f"({node.op} {_term_sexp(node.left)} {_term_sexp(node.right)})"
    if isinstance(node, Not):
        return f"(not {_formula_sexp(node.arg)})"
    if isinstance(node, And):
        return f"(and {' '.join(_formula_sexp(a) for a in node.args)})"
    if isinstance(node, Or):
        return f"(or {' '.join(_formula_sexp(a) for a in node.args)})"
    if isinstance(node, Implies):
        return f"(=> {_formula_sexp(node.left)} {_formula_sexp(node.right)})"
    if isinstance(node, Iff):
        return f"(= {_formula_sexp(node.left)} {_formula_sexp(node.right)})"
    if isinstance(node, Ite):
        return (
            f"(ite {_formula_sexp(node.cond)} {_formula_sexp(node.then)}"
            f" {_formula_sexp(node.orelse)})"
        )
    raise LraError(f"unknown formula node {node!r}")


def emit_smtlib(formula: LraFormula) -> str:
    """Complete SMT-LIB2 script: declarations, one assert, check-sat, get-model."""
    reals, bools = collect_variables(formula)
    lines = ["(set-option :produce-models true)", "(set-logic QF_LRA)"]
    for name in sorted(reals):
        lines.append(f"(declare-const {name} Real)")
    for name in sorted(bools):
        lines.append(f"(declare-const {name} Bool)")
    lines.append(f"(assert {_formula_sexp(formula)})")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return "\n".join(lines) + "\n"


# --- models ------------------------------------------------------------------


@dataclass
class Model:
    """Variable assignment from a solver; defaults cover don't-care variables."""

    values: dict[str, Fraction | bool]

    def real(self, name: str, default=Fraction(0)) -> Fraction:
        value = self.values.get(name, default)
        if isinstance(value, bool):
            raise LraError(f"variable {name} is Bool, not Real")
        return Fraction(value)

    def boolean(self, name: str, default=False) -> bool:
        value = self.values.get(name, default)
        if not isinstance(value, bool):
            raise LraError(f"variable {name} is Real, not Bool")
        return value


def _tokenize_sexp(text: str) -> list[str]:
    tokens = []
    current = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == ";":  # comment to end of line
            while pos < len(text) and text[pos] != "\n":
                pos += 1
            continue
        if ch in "()":
            if current:
                tokens.append("".join(current))
                current = []
            tokens.append(ch)
        elif ch.isspace():
            if current:
                tokens.append("".join(current))
                current = []
        else:
            current.append(ch)
        pos += 1
    if current:
        tokens.append("".join(current))
    return tokens


def _parse_sexp(tokens: list[str], pos: int):
    if tokens[pos] == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _parse_sexp(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise LraError("unbalanced parentheses in model")
        return items, pos + 1
    return tokens[pos], pos + 1


def _eval_value(sexp) -> Fraction | bool:
    if isinstance(sexp, str):
        if sexp == "true":
            return True
        if sexp == "false":
            return False
        try:
            return Fraction(sexp)
        except ValueError as exc:
            raise LraError(f"cannot read model value {sexp!r}") from exc
    if not sexp:
        raise LraError("empty model value")
    head, *args = sexp
    values = [_eval_value(a) for a in args]
    if any(isinstance(v, bool) for v in values):
        raise LraError(f"boolean inside arithmetic value: {sexp!r}")
    if head == "/":
        if len(values) != 2 or values[1] == 0:
            raise LraError(f"bad division in model value: {sexp!r}")
        return values[0] / values[1]
    if head == "-":
        if len(values) == 1:
            return -values[0]
        if len(values) == 2:
            return values[0] - values[1]
    if head == "+":
        return sum(values, Fraction(0))
    if head == "*":
        out = Fraction(1)
        for v in values:
            out *= v
        return out
    raise LraError(f"cannot read model value {sexp!r}")


def parse_model(text: str) -> Model:
    """Parse `get-model` output: (model (define-fun x () Real v) ...) or the
    bare parenthesized list some solvers print."""
    tokens = _tokenize_sexp(text)
    if not tokens:
        raise LraError("empty model text")
    sexp, _ = _parse_sexp(tokens, 0)
    if isinstance(sexp, str):
        raise LraError(f"malformed model: {text[:80]!r}")
    entries = sexp[1:] if sexp and sexp[0] == "model" else sexp
    values: dict[str, Fraction | bool] = {}
    for entry in entries:
        if not isinstance(entry, list) or not entry or entry[0] != "define-fun":
            continue
        if len(entry) != 5:
            raise LraError(f"unsupported model entry: {entry!r}")
        _, name, params, sort, value = entry
        if params != []:
            raise LraError(f"model entry with parameters not supported: {name}")
        parsed = _eval_value(value)
        if sort == "Bool" and not isinstance(parsed, bool):
            raise LraError(f"expected Bool value for {name}")
        if sort == "Real" and isinstance(parsed, bool):
            raise LraError(f"expected Real value for {name}")
        values[name] = parsed
    return Model(values)


# --- evaluation ---------------------------------------------------------------


def evaluate_term(term: LinTerm, model: Model) -> Fraction:
    total = term.const
    for name, coeff in term.coeffs:
        total += coeff * model.real(name)
    return total


def evaluate(formula: LraFormula, model: Model) -> bool:
    if isinstance(formula, BoolConst):
        return formula.value
    if isinstance(formula, BoolVar):
        return model.boolean(formula.name)
    if isinstance(formula, Atom):
        left = evaluate_term(formula.left, model)
        right = evaluate_term(formula.right, model)
        return {
            "<": left < right,
            "<=": left <= right,
            "=": left == right,
            ">=": left >= right,
            ">": left > right,
        }[formula.op]
    if isinstance(formula, Not):
        return not evaluate(formula.arg, model)
    if isinstance(formula, And):
        return all(evaluate(a, model) for a in formula.args)
    if isinstance(formula, Or):
        return any(evaluate(a, model) for a in formula.args)
    if isinstance(formula, Implies):
        return (not evaluate(formula.left, model)) or evaluate(formula.right, model)
    if isinstance(formula, Iff):
        return evaluate(formula.left, model) == evaluate(formula.right, model)
    if isinstance(formula, Ite):
        branch = formula.then if evaluate(formula.cond, model) else formula.orelse
        return evaluate(branch, model)
    raise LraError(f"unknown formula node {formula!r}")


def formula_stats(formula: LraFormula) -> dict[str, int]:
    """Node counts, for reporting the size of emitted constraint systems."""
    atoms = 0
    connectives = 0
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            atoms += 1
        elif isinstance(node, Not):
            connectives += 1
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            connectives += 1
            stack.extend(node.args)
        elif isinstance(node, (Implies, Iff)):
            connectives += 1
            stack.extend((node.left, node.right))
        elif isinstance(node, Ite):
            connectives += 1
            stack.extend((node.cond, node.then, node.orelse))
    reals, bools = collect_variables(formula)
    return {
        "atoms": atoms,
        "connectives": connectives,
        "real_variables": len(reals),
        "bool_variables": len(bools),
    }
