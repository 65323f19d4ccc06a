"""Three-valued interpretations and evaluation of literals.

Aggregate literals over partial interpretations are decided with the
two-bound shortcut that is exact for monotone and antimonotone literals:
undefined atoms are set to false (lower bound) or to true (upper bound) and
the aggregate is evaluated once per bound.  The exhaustive semantics for
arbitrary aggregates lives in :mod:`wfagg.oracle`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, FrozenSet, Iterable, List, Optional, Tuple

from .analysis import classify_monotonicity
from .syntax import (
    Aggregate,
    Atom,
    GroundSet,
    Literal,
    MonotonicityClass,
    Program,
    Rule,
    const_key,
    sort_atoms,
)

#: The value of an aggregate on a multiset outside its domain.
BOTTOM_VALUE = None


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"


TRUE = TruthValue.TRUE
FALSE = TruthValue.FALSE
UNDEFINED = TruthValue.UNDEFINED


class InconsistentInterpretationError(ValueError):
    def __init__(self, atoms):
        self.atoms = frozenset(atoms)
        super().__init__("atoms both true and false: " + ", ".join(map(str, sort_atoms(self.atoms))))


class NonMonotoneAggregateError(ValueError):
    """Raised when a nonmonotone aggregate reaches the tractable evaluation path."""

    def __init__(self, literal: Aggregate):
        self.literal = literal
        super().__init__(
            f"aggregate literal `{literal}` is neither monotone nor antimonotone; "
            "use wfagg.oracle.brute_eval_aggregate for exhaustive evaluation"
        )


@dataclass(frozen=True)
class Interpretation:
    """Consistent set of ground literals, kept as its true and false atoms."""

    true: FrozenSet[Atom] = frozenset()
    false: FrozenSet[Atom] = frozenset()

    def __post_init__(self):
        if not isinstance(self.true, frozenset):
            object.__setattr__(self, "true", frozenset(self.true))
        if not isinstance(self.false, frozenset):
            object.__setattr__(self, "false", frozenset(self.false))
        clash = self.true & self.false
        if clash:
            raise InconsistentInterpretationError(clash)

    @classmethod
    def total(cls, true: Iterable[Atom], base: Iterable[Atom]) -> "Interpretation":
        """Total interpretation over ``base`` making exactly ``true`` true."""
        true = frozenset(true)
        return cls(true, frozenset(base) - true)

    def value(self, a: Atom) -> TruthValue:
        if a in self.true:
            return TRUE
        if a in self.false:
            return FALSE
        return UNDEFINED

    def atoms(self) -> FrozenSet[Atom]:
        return self.true | self.false

    def is_total(self, base: Iterable[Atom]) -> bool:
        return set(base) <= self.true | self.false

    def issubset(self, other: "Interpretation") -> bool:
        return self.true <= other.true and self.false <= other.false

    def knowledge_leq(self, other: "Interpretation") -> bool:
        """I <= J iff I+ is contained in J+ and I- contains J-."""
        return self.true <= other.true and self.false >= other.false

    def override_false(self, xs: Iterable[Atom]) -> "Interpretation":
        """I with every atom of ``xs`` forced false (the dotted-union operation)."""
        xs = frozenset(xs)
        return Interpretation(self.true - xs, self.false | xs)

    def union(self, other: "Interpretation") -> "Interpretation":
        return Interpretation(self.true | other.true, self.false | other.false)

    def __len__(self) -> int:
        return len(self.true) + len(self.false)

    def __str__(self) -> str:
        parts = [str(a) for a in sort_atoms(self.true)] + [f"not {a}" for a in sort_atoms(self.false)]
        return "{" + ", ".join(parts) + "}"


# -- aggregate functions -------------------------------------------------------


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def apply_aggregate(fn: str, multiset: List):
    """Value of aggregate function ``fn`` on ``multiset``; ``None`` stands for bottom."""
    m = list(multiset)
    if fn == "count":
        return len(m)
    if fn in ("sum", "times", "avg") and not all(_is_int(v) for v in m):
        return BOTTOM_VALUE
    if fn == "sum":
        return sum(m)
    if fn == "times":
        return math.prod(m)
    if not m:
        return BOTTOM_VALUE
    if fn == "avg":
        return Fraction(sum(m), len(m))
    if fn == "min":
        return min(m, key=const_key)
    if fn == "max":
        return max(m, key=const_key)
    raise ValueError(f"unknown aggregate function {fn}")


def compare_value(value, cmp: str, guard) -> bool:
    kv, kg = const_key(value), const_key(guard)
    if cmp == "<":
        return kv < kg
    if cmp == "<=":
        return kv <= kg
    if cmp == ">":
        return kv > kg
    return kv >= kg


def _projection(s: GroundSet, is_true: Callable[[Atom], bool]) -> List:
    tuples = {consts for consts, conj in s.elements if all(is_true(a) for a in conj)}
    return [t[0] for t in tuples]


def aggregate_holds(agg: Aggregate, is_true: Callable[[Atom], bool]) -> bool:
    """Truth of a ground aggregate in the total interpretation given by ``is_true``."""
    value = apply_aggregate(agg.fn, _projection(agg.set, is_true))
    return value is not BOTTOM_VALUE and compare_value(value, agg.cmp, agg.guard)


def eval_set(i: Interpretation, s: GroundSet) -> List:
    """Multiset of first constants of the tuples whose conjunction is true in ``i``."""
    return sorted(_projection(s, i.true.__contains__), key=const_key)


def eval_standard(i: Interpretation, lit: Literal) -> TruthValue:
    v = i.value(lit.atom)
    if lit.positive or v is UNDEFINED:
        return v
    return FALSE if v is TRUE else TRUE


def _require_total(i: Interpretation, agg: Aggregate) -> None:
    undecided = [a for a in agg.set.atoms() if a not in i.true and a not in i.false]
    if undecided:
        raise ValueError(f"interpretation is not total on `{agg}`: {', '.join(map(str, sort_atoms(undecided)))}")


def eval_aggregate_total(i: Interpretation, agg: Aggregate) -> TruthValue:
    _require_total(i, agg)
    return TRUE if aggregate_holds(agg, i.true.__contains__) else FALSE


def bounds(i: Interpretation, base: Iterable[Atom]) -> Tuple[Interpretation, Interpretation]:
    """Lower and upper total extensions of ``i`` over ``base``.

    The lower one makes every undefined atom false, the upper one true.
    """
    base = frozenset(base)
    undefined = base - i.true - i.false
    return Interpretation(i.true, i.false | undefined), Interpretation(i.true | undefined, i.false)


def partial_truth(agg: Aggregate, cls: MonotonicityClass, true: FrozenSet[Atom], false: FrozenSet[Atom]) -> TruthValue:
    """Two-bound evaluation given the true and false atom sets directly."""
    if cls is MonotonicityClass.NONMONOTONE:
        raise NonMonotoneAggregateError(agg)
    atoms = agg.set.atoms()
    lower = aggregate_holds(agg, true.__contains__)
    upper = aggregate_holds(agg, lambda a: a in atoms and a not in false)
    if cls is MonotonicityClass.MONOTONE:
        if lower:
            return TRUE
        return FALSE if not upper else UNDEFINED
    if upper:
        return TRUE
    return FALSE if not lower else UNDEFINED


def eval_aggregate_partial(i: Interpretation, agg: Aggregate, cls: Optional[MonotonicityClass] = None) -> TruthValue:
    """Truth of a monotone or antimonotone aggregate under a partial interpretation."""
    if cls is None:
        cls = classify_monotonicity(agg)
    return partial_truth(agg, cls, i.true, i.false)


def eval_literal(i: Interpretation, lit) -> TruthValue:
    """Truth of any ground body literal.

    Aggregates decided by ``i`` on all their atoms are evaluated directly, so
    nonmonotone aggregates are accepted whenever the interpretation is total
    on them.
    """
    if isinstance(lit, Literal):
        return eval_standard(i, lit)
    if all(a in i.true or a in i.false for a in lit.set.atoms()):
        return TRUE if aggregate_holds(lit, i.true.__contains__) else FALSE
    return eval_aggregate_partial(i, lit)


def rule_satisfied(i: Interpretation, r: Rule) -> bool:
    head = i.value(r.head)
    if head is TRUE:
        return True
    values = [eval_literal(i, l) for l in r.body]
    if FALSE in values:
        return True
    return head is UNDEFINED and UNDEFINED in values


def is_model(i: Interpretation, program: Program) -> bool:
    return all(rule_satisfied(i, r) for r in program.rules)
