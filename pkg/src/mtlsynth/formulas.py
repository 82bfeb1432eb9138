"""MTL formulas in negation normal form, shared-subformula style.

A formula is a DAG of immutable nodes; identity is structural, so two
syntactically identical subtrees count as one node for `size`.  Temporal
operators carry closed rational intervals [lo, hi] with 0 <= lo <= hi.

Concrete syntax (produced by `print_formula`, accepted by `parse_formula`):

    atom     p, valve_open, ...   (identifiers; F, G, U are reserved)
    negation !p                   (only directly on an atom)
    unary    F[a,b] phi           G[a,b] phi
    binary   phi U[a,b] psi       phi & psi        phi | psi

Precedence: ! binds tightest, then F/G, then U (non-associative), then &,
then |.  Interval bounds are decimal or fraction literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .rationals import format_rational, parse_rational

PROP = "prop"
NOT = "not"
AND = "and"
OR = "or"
UNTIL = "until"
FINALLY = "finally"
GLOBALLY = "globally"

UNARY_KINDS = (NOT, FINALLY, GLOBALLY)
BINARY_KINDS = (AND, OR, UNTIL)
TEMPORAL_KINDS = (UNTIL, FINALLY, GLOBALLY)


class FormulaError(ValueError):
    """Malformed formula text or an ill-formed construction."""


@dataclass(frozen=True)
class MtlFormula:
    """One node of a formula DAG.  Use the module factories to build these."""

    kind: str
    name: str | None = None
    children: tuple["MtlFormula", ...] = ()
    lo: Fraction | None = None
    hi: Fraction | None = None
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.kind, self.name, self.children, self.lo, self.hi))
        )

    def __hash__(self):
        return self._hash

    def __str__(self):
        return print_formula(self)

    def subformulas(self) -> set["MtlFormula"]:
        """Distinct structural subformulas, this node included."""
        seen: set[MtlFormula] = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(node.children)
        return seen

    def propositions(self) -> set[str]:
        return {f.name for f in self.subformulas() if f.kind == PROP}


def prop(name: str) -> MtlFormula:
    if not name or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in ("F", "G", "U"):
        raise FormulaError(f"invalid proposition name: {name!r}")
    return MtlFormula(PROP, name=name)


def neg(operand: MtlFormula) -> MtlFormula:
    if operand.kind != PROP:
        raise FormulaError("negation is only allowed directly on a proposition")
    return MtlFormula(NOT, children=(operand,))


def conj(left: MtlFormula, right: MtlFormula) -> MtlFormula:
    return MtlFormula(AND, children=(left, right))


def disj(left: MtlFormula, right: MtlFormula) -> MtlFormula:
    return MtlFormula(OR, children=(left, right))


def _check_bounds(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo < 0 or lo > hi:
        raise FormulaError(f"invalid interval [{lo},{hi}]: need 0 <= lo <= hi")
    return lo, hi


def until(left: MtlFormula, right: MtlFormula, lo, hi) -> MtlFormula:
    lo, hi = _check_bounds(lo, hi)
    return MtlFormula(UNTIL, children=(left, right), lo=lo, hi=hi)


def eventually(operand: MtlFormula, lo, hi) -> MtlFormula:
    lo, hi = _check_bounds(lo, hi)
    return MtlFormula(FINALLY, children=(operand,), lo=lo, hi=hi)


def always(operand: MtlFormula, lo, hi) -> MtlFormula:
    lo, hi = _check_bounds(lo, hi)
    return MtlFormula(GLOBALLY, children=(operand,), lo=lo, hi=hi)


def size(formula: MtlFormula) -> int:
    """Number of distinct structural subformulas (shared subtrees count once)."""
    return len(formula.subformulas())


def future_reach(formula: MtlFormula) -> Fraction:
    """How far past the current time point the verdict may depend on."""
    memo: dict[MtlFormula, Fraction] = {}

    def go(f: MtlFormula) -> Fraction:
        got = memo.get(f)
        if got is not None:
            return got
        if f.kind == PROP:
            value = Fraction(0)
        elif f.kind == NOT:
            value = go(f.children[0])
        elif f.kind in (AND, OR):
            value = max(go(f.children[0]), go(f.children[1]))
        elif f.kind == UNTIL:
            value = f.hi + max(go(f.children[0]), go(f.children[1]))
        else:  # FINALLY / GLOBALLY
            value = f.hi + go(f.children[0])
        memo[f] = value
        return value

    return go(formula)


# --- printing -------------------------------------------------------------

_LEVEL = {OR: 1, AND: 2, UNTIL: 3, FINALLY: 4, GLOBALLY: 4, NOT: 5, PROP: 6}


def _bounds_text(f: MtlFormula) -> str:
    return f"[{format_rational(f.lo)},{format_rational(f.hi)}]"


def print_formula(formula: MtlFormula) -> str:
    """Canonical text with minimal parentheses; `parse_formula` inverts it."""

    def wrap(child: MtlFormula, minimum: int) -> str:
        text = go(child)
        return f"({text})" if _LEVEL[child.kind] < minimum else text

    def go(f: MtlFormula) -> str:
        if f.kind == PROP:
            return f.name
        if f.kind == NOT:
            return f"!{go(f.children[0])}"
        if f.kind == FINALLY:
            return f"F{_bounds_text(f)} {wrap(f.children[0], _LEVEL[FINALLY])}"
        if f.kind == GLOBALLY:
            return f"G{_bounds_text(f)} {wrap(f.children[0], _LEVEL[GLOBALLY])}"
        if f.kind == UNTIL:
            # U is non-associative: both operands must bind tighter.
            left = wrap(f.children[0], _LEVEL[UNTIL] + 1)
            right = wrap(f.children[1], _LEVEL[UNTIL] + 1)
            return f"{left} U{_bounds_text(f)} {right}"
        op = "&" if f.kind == AND else "|"
        left = wrap(f.children[0], _LEVEL[f.kind])
        right = wrap(f.children[1], _LEVEL[f.kind] + 1)
        return f"{left} {op} {right}"

    return go(formula)


# --- parsing --------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[!&|()\[\],]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise FormulaError(f"unexpected character {text[pos:].lstrip()[:1]!r} in formula")
        if match.group("num"):
            tokens.append(("num", match.group("num")))
        elif match.group("name"):
            tokens.append(("name", match.group("name")))
        else:
            tokens.append(("sym", match.group("sym")))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise FormulaError("unexpected end of formula")
        if kind is not None and tok[0] != kind:
            raise FormulaError(f"expected {kind}, found {tok[1]!r}")
        if value is not None and tok[1] != value:
            raise FormulaError(f"expected {value!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def bounds(self) -> tuple[Fraction, Fraction]:
        self.take("sym", "[")
        lo = parse_rational(self.take("num")[1])
        self.take("sym", ",")
        hi = parse_rational(self.take("num")[1])
        self.take("sym", "]")
        if lo > hi:
            raise FormulaError(f"invalid interval [{lo},{hi}]: lower bound exceeds upper")
        return lo, hi

    def or_expr(self) -> MtlFormula:
        node = self.and_expr()
        while self.peek() == ("sym", "|"):
            self.take()
            node = disj(node, self.and_expr())
        return node

    def and_expr(self) -> MtlFormula:
        node = self.until_expr()
        while self.peek() == ("sym", "&"):
            self.take()
            node = conj(node, self.until_expr())
        return node

    def until_expr(self) -> MtlFormula:
        node = self.unary_expr()
        if self.peek() == ("name", "U"):
            self.take()
            lo, hi = self.bounds()
            node = until(node, self.unary_expr(), lo, hi)
            if self.peek() == ("name", "U"):
                raise FormulaError("U is non-associative; parenthesize chained U")
        return node

    def unary_expr(self) -> MtlFormula:
        kind, value = self.peek()
        if (kind, value) == ("sym", "!"):
            self.take()
            operand = self.primary()
            return neg(operand)
        if kind == "name" and value in ("F", "G"):
            self.take()
            lo, hi = self.bounds()
            operand = self.unary_expr()
            return eventually(operand, lo, hi) if value == "F" else always(operand, lo, hi)
        return self.primary()

    def primary(self) -> MtlFormula:
        kind, value = self.peek()
        if (kind, value) == ("sym", "("):
            self.take()
            node = self.or_expr()
            self.take("sym", ")")
            return node
        if kind == "name":
            if value in ("F", "G", "U"):
                raise FormulaError(f"{value!r} is an operator, not a proposition")
            self.take()
            return prop(value)
        raise FormulaError(f"expected a proposition or '(', found {value!r}")


def parse_formula(text: str) -> MtlFormula:
    """Parse formula text; raises FormulaError on malformed input."""
    parser = _Parser(_tokenize(text))
    node = parser.or_expr()
    if parser.peek()[0] is not None:
        raise FormulaError(f"trailing input after formula: {parser.peek()[1]!r}")
    return node
