"""LRA encoding of the bounded-size formula search.

For a candidate DAG size n, the encoding conjoins three parts:

  * structure: node labels, child wiring, interval bounds of a well-formed
    negation-normal-form formula DAG with nodes 1..n (children have smaller
    identifiers; node n is the root);
  * lookahead: per-node lookahead values f_i defined inductively, with the
    root's value capped by the user bound;
  * semantics: per prefix, per node, a bounded array of interval slots that
    mirrors the monitor's inductive interval computation, with the root
    array forced to [0, T) exactly on positives and not on negatives.

Interval arrays hold `size` slots (left_m, right_m) plus a slot count `num`;
slots past `num` are parked at [T, T).  Set operations (complement, union,
intersection, backward shift, conditional intersection) are encoded so that
any satisfying assignment stores, slot for slot, exactly the interval sets
the monitor would compute for the decoded formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import formulas as fm
from . import lra
from .lra import (
    FALSE,
    TRUE,
    And,
    BoolVar,
    Iff,
    Ite,
    LinTerm,
    Not,
    all_of,
    any_of,
    eq,
    ge,
    gt,
    implies,
    le,
    lt,
    mk_max,
    rat,
    var,
)
from .monitoring import satisfaction_intervals
from .signals import Sample


class EncodingError(RuntimeError):
    """A solver model that violates the encoding's own invariants."""


OPERATOR_LABELS = ("not", "or", "and", "until", "finally", "globally")
UNARY_LABELS = ("not", "finally", "globally")
BINARY_LABELS = ("or", "and", "until")


def interval_slot_bounds(sample: Sample, size: int, margin: int = 2) -> list[int]:
    """Per-prefix slot budget: interval counts stay within (base-interval
    maximum) * (formula size); the margin absorbs transient intermediates."""
    if size < 1:
        raise ValueError("size must be at least 1")
    bounds = []
    for prefix in sample.prefixes:
        mu = max(
            [len(prefix.base_intervals(p).spans) for p in sample.alphabet],
            default=0,
        )
        bounds.append(max(1, mu) * size + margin)
    return bounds


@dataclass(frozen=True)
class ArrayRef:
    """Named bank of interval slots with a slot-count variable."""

    tag: str
    size: int

    def left(self, m: int) -> LinTerm:
        return var(f"{self.tag}_l{m}")

    def right(self, m: int) -> LinTerm:
        return var(f"{self.tag}_r{m}")

    def num(self) -> LinTerm:
        return var(f"{self.tag}_n")


Source = tuple[LinTerm, LinTerm, "lra.LraFormula"]


def _sources(arr: ArrayRef, trusted: bool = False) -> list[Source]:
    """Slot triples (left, right, active); inactive or empty slots contribute
    no points, so coverage scans can use them unguarded.  For arrays whose
    constraints already make every in-range slot non-empty (`trusted`), the
    activity guard is just the slot count check."""
    out = []
    for m in range(1, arr.size + 1):
        active = le(rat(m), arr.num())
        if not trusted:
            active = all_of([active, lt(arr.left(m), arr.right(m))])
        out.append((arr.left(m), arr.right(m), active))
    return out


class Encoding:
    """Constraint system for one candidate size; build once, then solve."""

    def __init__(self, sample: Sample, reach_bound, size: int, margin: int = 2):
        if size < 1:
            raise ValueError("size must be at least 1")
        self.sample = sample
        self.bound = Fraction(reach_bound)
        self.n = size
        self.margin = margin
        self.horizon = sample.horizon
        self.slot_bounds = interval_slot_bounds(sample, size, margin)
        self.prefixes = sample.prefixes
        self.labels = tuple(sample.alphabet) + OPERATOR_LABELS
        self._mu = [
            max(
                [len(prefix.base_intervals(p).spans) for p in sample.alphabet]
                or [0]
            )
            for prefix in self.prefixes
        ]

    def node_size(self, i: int, s: int) -> int:
        """Slot budget for node i on prefix s: the interval count of the
        subformula rooted at i stays within mu * (its size) <= mu * i."""
        return max(1, self._mu[s - 1]) * i + self.margin

    # -- variable naming ----------------------------------------------------

    def label_var(self, i: int, label: str) -> BoolVar:
        kind = "P" if label in self.sample.alphabet else "O"
        return BoolVar(f"x{i}_{kind}_{label}")

    def left_child(self, i: int, j: int) -> BoolVar:
        return BoolVar(f"l{i}_{j}")

    def right_child(self, i: int, j: int) -> BoolVar:
        return BoolVar(f"r{i}_{j}")

    def lo_bound(self, i: int) -> LinTerm:
        return var(f"a{i}")

    def hi_bound(self, i: int) -> LinTerm:
        return var(f"b{i}")

    def reach(self, i: int) -> LinTerm:
        return var(f"f{i}")

    def node_array(self, i: int, s: int) -> ArrayRef:
        return ArrayRef(f"t{i}_s{s}", self.node_size(i, s))

    def _aux(self, name: str, i: int, s: int, size: int) -> ArrayRef:
        return ArrayRef(f"{name}{i}_s{s}", size)

    # -- structural constraints ----------------------------------------------

    def build_structural(self) -> lra.LraFormula:
        parts: list[lra.LraFormula] = []
        for i in range(1, self.n + 1):
            node_labels = [self.label_var(i, lab) for lab in self.labels]
            parts.append(any_of(node_labels))
            for x in range(len(node_labels)):
                for y in range(x + 1, len(node_labels)):
                    parts.append(any_of([Not(node_labels[x]), Not(node_labels[y])]))

            lefts = [self.left_child(i, j) for j in range(1, i)]
            rights = [self.right_child(i, j) for j in range(1, i)]
            one_left = self._exactly_one(lefts)
            one_right = self._exactly_one(rights)
            no_left = all_of([Not(v) for v in lefts])
            no_right = all_of([Not(v) for v in rights])

            is_prop = any_of([self.label_var(i, p) for p in self.sample.alphabet])
            is_unary = any_of([self.label_var(i, lab) for lab in UNARY_LABELS])
            is_binary = any_of([self.label_var(i, lab) for lab in BINARY_LABELS])
            parts.append(implies(is_prop, all_of([no_left, no_right])))
            parts.append(implies(is_unary, all_of([one_left, no_right])))
            parts.append(implies(is_binary, all_of([one_left, one_right])))

            for j in range(1, i):
                child_is_prop = any_of(
                    [self.label_var(j, p) for p in self.sample.alphabet]
                )
                parts.append(
                    implies(
                        all_of([self.label_var(i, "not"), self.left_child(i, j)]),
                        child_is_prop,
                    )
                )

            parts.append(le(rat(0), self.lo_bound(i)))
            parts.append(le(self.lo_bound(i), self.hi_bound(i)))
        return all_of(parts)

    @staticmethod
    def _exactly_one(options: list[BoolVar]) -> lra.LraFormula:
        if not options:
            return FALSE
        parts: list[lra.LraFormula] = [any_of(options)]
        for x in range(len(options)):
            for y in range(x + 1, len(options)):
                parts.append(any_of([Not(options[x]), Not(options[y])]))
        return all_of(parts)

    # -- lookahead constraints -------------------------------------------------

    def build_future_reach(self) -> lra.LraFormula:
        parts: list[lra.LraFormula] = []
        for i in range(1, self.n + 1):
            is_prop = any_of([self.label_var(i, p) for p in self.sample.alphabet])
            parts.append(implies(is_prop, eq(self.reach(i), 0)))
            parts.append(le(self.hi_bound(i), self.bound))
            if i == 1:
                continue
            left_reach = var(f"fl{i}")
            right_reach = var(f"fr{i}")
            for j in range(1, i):
                parts.append(
                    implies(self.left_child(i, j), eq(left_reach, self.reach(j)))
                )
                parts.append(
                    implies(self.right_child(i, j), eq(right_reach, self.reach(j)))
                )
            max_term, max_def = mk_max(left_reach, right_reach, f"fm{i}")
            parts.append(max_def)
            parts.append(
                implies(self.label_var(i, "not"), eq(self.reach(i), left_reach))
            )
            parts.append(
                implies(
                    any_of([self.label_var(i, "or"), self.label_var(i, "and")]),
                    eq(self.reach(i), max_term),
                )
            )
            parts.append(
                implies(
                    self.label_var(i, "until"),
                    eq(self.reach(i), max_term + self.hi_bound(i)),
                )
            )
            parts.append(
                implies(
                    any_of(
                        [self.label_var(i, "finally"), self.label_var(i, "globally")]
                    ),
                    eq(self.reach(i), left_reach + self.hi_bound(i)),
                )
            )
        parts.append(le(self.reach(self.n), self.bound))
        return all_of(parts)

    # -- interval-array building blocks ----------------------------------------

    def _wf(self, arr: ArrayRef) -> lra.LraFormula:
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = [
            any_of([eq(arr.num(), v) for v in range(arr.size + 1)])
        ]
        for m in range(1, arr.size + 1):
            parts.append(
                implies(
                    le(rat(m), arr.num()),
                    all_of(
                        [
                            le(rat(0), arr.left(m)),
                            lt(arr.left(m), arr.right(m)),
                            le(arr.right(m), T),
                        ]
                    ),
                )
            )
            parts.append(
                implies(
                    lt(arr.num(), rat(m)),
                    all_of([eq(arr.left(m), T), eq(arr.right(m), T)]),
                )
            )
            if m < arr.size:
                parts.append(
                    implies(
                        le(rat(m + 1), arr.num()),
                        lt(arr.right(m), arr.left(m + 1)),
                    )
                )
        return all_of(parts)

    def _pin_constant(self, arr: ArrayRef, spans) -> lra.LraFormula:
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = [eq(arr.num(), len(spans))]
        for m in range(1, arr.size + 1):
            if m <= len(spans):
                left, right = spans[m - 1]
                parts.append(eq(arr.left(m), left))
                parts.append(eq(arr.right(m), right))
            else:
                parts.append(eq(arr.left(m), T))
                parts.append(eq(arr.right(m), T))
        return all_of(parts)

    def _copy(self, dst: ArrayRef, src: ArrayRef) -> lra.LraFormula:
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = [eq(dst.num(), src.num())]
        for m in range(1, dst.size + 1):
            if m <= src.size:
                parts.append(eq(dst.left(m), src.left(m)))
                parts.append(eq(dst.right(m), src.right(m)))
            else:
                parts.append(eq(dst.left(m), T))
                parts.append(eq(dst.right(m), T))
        return all_of(parts)

    def _complement(self, out: ArrayRef, inp: ArrayRef) -> lra.LraFormula:
        """Slot-aligned complement; assumes the input is sorted, disjoint,
        non-adjacent, with parked padding slots."""
        T = rat(self.horizon)

        def vleft(m):
            return inp.left(m) if m <= inp.size else T

        def vright(m):
            return inp.right(m) if m <= inp.size else T

        starts_at_zero = []
        for m in range(1, out.size + 1):
            starts_at_zero.append(eq(out.left(m), vright(m)))
            starts_at_zero.append(eq(out.right(m), vleft(m + 1)))
        other = [eq(out.left(1), rat(0)), eq(out.right(1), vleft(1))]
        for m in range(2, out.size + 1):
            other.append(eq(out.left(m), vright(m - 1)))
            other.append(eq(out.right(m), vleft(m)))
        parts: list[lra.LraFormula] = [
            Ite(eq(inp.left(1), rat(0)), all_of(starts_at_zero), all_of(other))
        ]
        for m in range(1, out.size + 1):
            parts.append(
                Iff(le(rat(m), out.num()), lt(out.left(m), out.right(m)))
            )
        parts.append(le(rat(0), out.num()))
        parts.append(le(out.num(), rat(out.size)))
        return all_of(parts)

    def _shift_back(
        self, out: ArrayRef, inp: ArrayRef, lo: LinTerm, hi: LinTerm
    ) -> lra.LraFormula:
        """Per-slot [l, r) -> [max(0, l-hi), max(0, r-lo)); counts carry over,
        results may overlap or collapse to [0, 0)."""
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = [eq(out.num(), inp.num())]
        for m in range(1, out.size + 1):
            if m <= inp.size:
                shifted_l = inp.left(m) - hi
                shifted_r = inp.right(m) - lo
                body = all_of(
                    [
                        Ite(
                            ge(shifted_l, 0),
                            eq(out.left(m), shifted_l),
                            eq(out.left(m), rat(0)),
                        ),
                        Ite(
                            ge(shifted_r, 0),
                            eq(out.right(m), shifted_r),
                            eq(out.right(m), rat(0)),
                        ),
                    ]
                )
                parts.append(implies(le(rat(m), inp.num()), body))
                parts.append(
                    implies(
                        lt(inp.num(), rat(m)),
                        all_of([eq(out.left(m), T), eq(out.right(m), T)]),
                    )
                )
            else:
                parts.append(all_of([eq(out.left(m), T), eq(out.right(m), T)]))
        return all_of(parts)

    def _union(
        self, out: ArrayRef, first: list[Source], second: list[Source]
    ) -> lra.LraFormula:
        """`out` holds the maximal disjoint intervals of the union of all
        active source slots.  A source bound survives into `out` exactly when
        no source interval covers it from the relevant side."""
        triples = list(first) + list(second)
        parts: list[lra.LraFormula] = []
        for m in range(1, out.size + 1):
            in_range = le(rat(m), out.num())
            left_pool = any_of(
                [all_of([act, eq(out.left(m), l)]) for l, _, act in triples]
            )
            right_pool = any_of(
                [all_of([act, eq(out.right(m), r)]) for _, r, act in triples]
            )
            parts.append(implies(in_range, all_of([left_pool, right_pool])))
        for l, r, act in triples:
            appears_left = any_of(
                [
                    all_of([le(rat(m), out.num()), eq(out.left(m), l)])
                    for m in range(1, out.size + 1)
                ]
            )
            appears_right = any_of(
                [
                    all_of([le(rat(m), out.num()), eq(out.right(m), r)])
                    for m in range(1, out.size + 1)
                ]
            )
            left_covered = any_of(
                [all_of([lt(l2, l), le(l, r2)]) for l2, r2, _ in triples]
            )
            right_covered = any_of(
                [all_of([le(l2, r), lt(r, r2)]) for l2, r2, _ in triples]
            )
            parts.append(implies(act, Iff(appears_left, Not(left_covered))))
            parts.append(implies(act, Iff(appears_right, Not(right_covered))))
        return all_of(parts)

    def _intersection(
        self, out: ArrayRef, first: list[Source], second: list[Source]
    ) -> lra.LraFormula:
        """`out` holds the maximal disjoint intervals of the pointwise
        intersection of the two source families."""
        triples = list(first) + list(second)
        parts: list[lra.LraFormula] = []
        for m in range(1, out.size + 1):
            in_range = le(rat(m), out.num())
            left_pool = any_of(
                [all_of([act, eq(out.left(m), l)]) for l, _, act in triples]
            )
            right_pool = any_of(
                [all_of([act, eq(out.right(m), r)]) for _, r, act in triples]
            )
            parts.append(implies(in_range, all_of([left_pool, right_pool])))

        def membership(sources_here: list[Source], sources_other: list[Source]):
            for l, r, act in sources_here:
                appears_left = any_of(
                    [
                        all_of([le(rat(m), out.num()), eq(out.left(m), l)])
                        for m in range(1, out.size + 1)
                    ]
                )
                appears_right = any_of(
                    [
                        all_of([le(rat(m), out.num()), eq(out.right(m), r)])
                        for m in range(1, out.size + 1)
                    ]
                )
                left_inside = any_of(
                    [all_of([le(l2, l), lt(l, r2)]) for l2, r2, _ in sources_other]
                )
                right_inside = any_of(
                    [all_of([lt(l2, r), le(r, r2)]) for l2, r2, _ in sources_other]
                )
                parts.append(implies(act, Iff(appears_left, left_inside)))
                parts.append(implies(act, Iff(appears_right, right_inside)))

        membership(first, second)
        membership(second, first)
        return all_of(parts)

    def _conditional_intersection(
        self, out: ArrayRef, shifted: ArrayRef, base: ArrayRef, host: ArrayRef
    ) -> lra.LraFormula:
        """Slot m of `out` is slot m of `shifted` clipped to the unique host
        interval containing slot m of `base`."""
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = [eq(out.num(), base.num())]
        for m in range(1, out.size + 1):
            if m > base.size:
                parts.append(all_of([eq(out.left(m), T), eq(out.right(m), T)]))
                continue
            active = le(rat(m), base.num())
            for mp in range(1, host.size + 1):
                contained = all_of(
                    [
                        le(host.left(mp), base.left(m)),
                        le(base.right(m), host.right(mp)),
                    ]
                )
                clip = all_of(
                    [
                        Ite(
                            ge(shifted.left(m), host.left(mp)),
                            eq(out.left(m), shifted.left(m)),
                            eq(out.left(m), host.left(mp)),
                        ),
                        Ite(
                            le(shifted.right(m), host.right(mp)),
                            eq(out.right(m), shifted.right(m)),
                            eq(out.right(m), host.right(mp)),
                        ),
                    ]
                )
                parts.append(implies(all_of([active, contained]), clip))
            parts.append(
                implies(
                    lt(base.num(), rat(m)),
                    all_of([eq(out.left(m), T), eq(out.right(m), T)]),
                )
            )
        return all_of(parts)

    # -- semantic constraints ---------------------------------------------------

    def build_semantic(self) -> lra.LraFormula:
        parts: list[lra.LraFormula] = []
        for s in range(1, len(self.prefixes) + 1):
            parts.append(self._semantic_for_prefix(s))
        parts.append(self._separation_constraint())
        return all_of(parts)

    def _semantic_for_prefix(self, s: int) -> lra.LraFormula:
        sample = self.sample
        prefix = self.prefixes[s - 1]
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = []

        for i in range(1, self.n + 1):
            node = self.node_array(i, s)
            parts.append(self._wf(node))
            for p in sample.alphabet:
                spans = prefix.base_intervals(p).spans
                parts.append(
                    implies(self.label_var(i, p), self._pin_constant(node, spans))
                )
            if i == 1:
                continue

            child_cap = self.node_size(i - 1, s)
            left_op = self._aux("cl", i, s, child_cap)
            right_op = self._aux("cr", i, s, child_cap)
            for j in range(1, i):
                parts.append(
                    implies(self.left_child(i, j), self._copy(left_op, self.node_array(j, s)))
                )
                parts.append(
                    implies(self.right_child(i, j), self._copy(right_op, self.node_array(j, s)))
                )

            is_not = self.label_var(i, "not")
            is_or = self.label_var(i, "or")
            is_and = self.label_var(i, "and")
            is_fin = self.label_var(i, "finally")
            is_glob = self.label_var(i, "globally")
            is_until = self.label_var(i, "until")
            lo, hi = self.lo_bound(i), self.hi_bound(i)

            parts.append(implies(is_not, self._complement(node, left_op)))
            parts.append(
                implies(
                    is_or,
                    self._union(
                        node, _sources(left_op, True), _sources(right_op, True)
                    ),
                )
            )
            parts.append(
                implies(
                    is_and,
                    self._intersection(
                        node, _sources(left_op, True), _sources(right_op, True)
                    ),
                )
            )

            # eventually: shift the operand backwards, then merge with the
            # horizon tail [T - hi, T).
            shifted_f = self._aux("kF", i, s, child_cap)
            tail_f = var(f"tf{i}_s{s}")
            tail_f_def = Ite(le(hi, T), eq(tail_f, T - hi), eq(tail_f, rat(0)))
            parts.append(
                implies(
                    is_fin,
                    all_of(
                        [
                            self._shift_back(shifted_f, left_op, lo, hi),
                            tail_f_def,
                            self._union(
                                node,
                                _sources(shifted_f),
                                [(tail_f, T, lt(tail_f, T))],
                            ),
                        ]
                    ),
                )
            )

            # always: complement, shift, normalize, complement again, then
            # merge with the horizon tail [T - lo, T).
            comp_g = self._aux("kGc", i, s, child_cap + 1)
            shifted_g = self._aux("kGd", i, s, child_cap + 1)
            norm_g = self._aux("kGn", i, s, child_cap + 1)
            comp2_g = self._aux("kGm", i, s, child_cap + 2)
            tail_g = var(f"tg{i}_s{s}")
            tail_g_def = Ite(le(lo, T), eq(tail_g, T - lo), eq(tail_g, rat(0)))
            parts.append(
                implies(
                    is_glob,
                    all_of(
                        [
                            self._complement(comp_g, left_op),
                            self._shift_back(shifted_g, comp_g, lo, hi),
                            self._wf(norm_g),
                            self._union(norm_g, _sources(shifted_g), []),
                            self._complement(comp2_g, norm_g),
                            tail_g_def,
                            self._union(
                                node,
                                _sources(comp2_g, True),
                                [(tail_g, T, lt(tail_g, T))],
                            ),
                        ]
                    ),
                )
            )

            # until: intersect the operands, shift backwards, clip each piece
            # to the left-operand interval hosting it, then merge with the
            # tail of the last left-operand interval when it touches T.
            inter_cap = 2 * child_cap
            inter_u = self._aux("kU1", i, s, inter_cap)
            shifted_u = self._aux("kU2", i, s, inter_cap)
            clipped_u = self._aux("kU3", i, s, inter_cap)
            tail_u = var(f"tu{i}_s{s}")
            tail_parts: list[lra.LraFormula] = [
                implies(eq(left_op.num(), 0), eq(tail_u, T))
            ]
            for m in range(1, child_cap + 1):
                is_last = eq(left_op.num(), m)
                reaches_T = eq(left_op.right(m), T)
                keep = Ite(
                    ge(T - hi, left_op.left(m)),
                    eq(tail_u, T - hi),
                    eq(tail_u, left_op.left(m)),
                )
                tail_parts.append(
                    implies(is_last, Ite(reaches_T, keep, eq(tail_u, T)))
                )
            parts.append(
                implies(
                    is_until,
                    all_of(
                        [
                            self._wf(inter_u),
                            self._intersection(
                                inter_u,
                                _sources(left_op, True),
                                _sources(right_op, True),
                            ),
                            self._shift_back(shifted_u, inter_u, lo, hi),
                            self._conditional_intersection(
                                clipped_u, shifted_u, inter_u, left_op
                            ),
                            all_of(tail_parts),
                            self._union(
                                node,
                                _sources(clipped_u),
                                [(tail_u, T, lt(tail_u, T))],
                            ),
                        ]
                    ),
                )
            )
        return all_of(parts)

    def _separation_constraint(self) -> lra.LraFormula:
        T = rat(self.horizon)
        parts: list[lra.LraFormula] = []
        for s in range(1, len(self.prefixes) + 1):
            root = self.node_array(self.n, s)
            positive = s <= len(self.sample.positive)
            if positive:
                parts.append(eq(root.left(1), rat(0)))
                parts.append(eq(root.right(1), T))
            else:
                parts.append(
                    any_of(
                        [Not(eq(root.left(1), rat(0))), Not(eq(root.right(1), T))]
                    )
                )
        return all_of(parts)

    def build(self) -> lra.LraFormula:
        return all_of(
            [self.build_structural(), self.build_future_reach(), self.build_semantic()]
        )

    # -- reading models back ------------------------------------------------------

    def decode(self, model: lra.Model) -> fm.MtlFormula:
        """Reconstruct the formula rooted at node n from a satisfying model."""
        built: dict[int, fm.MtlFormula] = {}

        def label_of(i: int) -> str:
            hits = [lab for lab in self.labels if model.boolean(self.label_var(i, lab).name)]
            if len(hits) != 1:
                raise EncodingError(f"node {i} carries {len(hits)} labels in the model")
            return hits[0]

        def child(i: int, which) -> int:
            hits = [j for j in range(1, i) if model.boolean(which(i, j).name)]
            if len(hits) != 1:
                raise EncodingError(
                    f"node {i} has {len(hits)} {which.__name__} children in the model"
                )
            return hits[0]

        def build(i: int) -> fm.MtlFormula:
            got = built.get(i)
            if got is not None:
                return got
            label = label_of(i)
            if label in self.sample.alphabet:
                out = fm.prop(label)
            else:
                lo = model.real(f"a{i}")
                hi = model.real(f"b{i}")
                left = build(child(i, self.left_child))
                if label == "not":
                    if left.kind != fm.PROP:
                        raise EncodingError("negation of a non-proposition in the model")
                    out = fm.neg(left)
                elif label == "finally":
                    out = fm.eventually(left, lo, hi)
                elif label == "globally":
                    out = fm.always(left, lo, hi)
                else:
                    right = build(child(i, self.right_child))
                    if label == "or":
                        out = fm.disj(left, right)
                    elif label == "and":
                        out = fm.conj(left, right)
                    else:
                        out = fm.until(left, right, lo, hi)
            built[i] = out
            return out

        try:
            return build(self.n)
        except fm.FormulaError as exc:
            raise EncodingError(f"model decodes to an ill-formed formula: {exc}") from exc

    def root_slots(self, model: lra.Model, s: int) -> list[tuple[Fraction, Fraction]]:
        """Root interval slots for prefix s (1-based), padding removed."""
        root = self.node_array(self.n, s)
        spans = []
        for m in range(1, root.size + 1):
            left = model.real(f"{root.tag}_l{m}")
            right = model.real(f"{root.tag}_r{m}")
            if left < right:
                spans.append((left, right))
        return spans

    def assume_structure(self, formula: fm.MtlFormula) -> lra.LraFormula:
        """Assumptions pinning the DAG of `formula` onto nodes 1..n (children
        before parents, root last); for tests and diagnostics."""
        order = _topological(formula)
        if len(order) != self.n:
            raise ValueError(
                f"formula has {len(order)} distinct subformulas, encoding has {self.n}"
            )
        ids = {node: idx + 1 for idx, node in enumerate(order)}
        parts: list[lra.LraFormula] = []
        for node, i in ids.items():
            if node.kind == fm.PROP:
                parts.append(self.label_var(i, node.name))
            else:
                label = {
                    fm.NOT: "not",
                    fm.AND: "and",
                    fm.OR: "or",
                    fm.UNTIL: "until",
                    fm.FINALLY: "finally",
                    fm.GLOBALLY: "globally",
                }[node.kind]
                parts.append(self.label_var(i, label))
                parts.append(self.left_child(i, ids[node.children[0]]))
                if len(node.children) == 2:
                    parts.append(self.right_child(i, ids[node.children[1]]))
                if node.lo is not None:
                    parts.append(eq(self.lo_bound(i), node.lo))
                    parts.append(eq(self.hi_bound(i), node.hi))
        return all_of(parts)


def _topological(formula: fm.MtlFormula) -> list[fm.MtlFormula]:
    """Distinct subformulas, children before parents, root last."""
    order: list[fm.MtlFormula] = []
    seen: set[fm.MtlFormula] = set()

    def visit(node: fm.MtlFormula):
        if node in seen:
            return
        for ch in node.children:
            visit(ch)
        seen.add(node)
        order.append(node)

    visit(formula)
    return order


def verify_model(
    encoding: Encoding, model: lra.Model, formula: fm.MtlFormula
) -> None:
    """Cross-check a decoded formula against the monitor: interval slots of
    the root must match the independently computed satisfaction intervals."""
    for s, prefix in enumerate(encoding.prefixes, start=1):
        expected = satisfaction_intervals(formula, prefix).spans
        got = tuple(encoding.root_slots(model, s))
        if tuple(expected) != got:
            raise EncodingError(
                f"root interval slots diverge from the monitor on prefix {s}: "
                f"encoded {got}, monitor says {tuple(expected)}"
            )
