"""Abstract syntax for logic programs with aggregates.

Constants are plain Python values (``int`` or ``str``), variables are
:class:`Var` instances.  Every node is an immutable, hashable dataclass, so
ground atoms can be used directly as set members and dictionary keys.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, Tuple, Union

BOTTOM = "__bot"

AGGREGATE_FUNCTIONS = ("count", "sum", "times", "min", "max", "avg")
AGGREGATE_COMPARATORS = ("<", "<=", ">", ">=")
BUILTIN_COMPARATORS = ("=", "!=", "<", "<=", ">", ">=")
ARITHMETIC_OPERATORS = ("+", "-", "*")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


Constant = Union[int, str]
Term = Union[Var, int, str]
Substitution = Dict[Var, Constant]


def is_var(term) -> bool:
    return isinstance(term, Var)


def const_key(c) -> tuple:
    """Sort key realising the global total order on constants.

    The reserved bottom constant comes first, then integers (and exact
    rationals) by value, then symbolic constants lexicographically.
    """
    if isinstance(c, bool):
        raise TypeError("booleans are not constants")
    if isinstance(c, (int, Fraction)):
        return (0, c, "")
    if c == BOTTOM:
        return (-1, 0, "")
    if isinstance(c, str):
        return (1, 0, c)
    raise TypeError(f"not a constant: {c!r}")


def term_str(t) -> str:
    return str(t)


@dataclass(frozen=True)
class Atom:
    pred: str
    args: Tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> Tuple[str, int]:
        return (self.pred, len(self.args))

    def is_ground(self) -> bool:
        return not any(isinstance(a, Var) for a in self.args)

    def variables(self) -> FrozenSet[Var]:
        return frozenset(a for a in self.args if isinstance(a, Var))

    def substitute(self, sub: Substitution) -> "Atom":
        return Atom(self.pred, tuple(sub.get(a, a) if isinstance(a, Var) else a for a in self.args))

    def sort_key(self) -> tuple:
        return (self.pred, tuple(const_key(a) if not isinstance(a, Var) else (2, 0, a.name) for a in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(map(str, self.args))})"


def atom(pred: str, *args) -> Atom:
    """Shorthand used heavily in tests: ``atom("p", 2, 1)``."""
    return Atom(pred, tuple(args))


@dataclass(frozen=True)
class Literal:
    """A standard literal: an atom, possibly under negation as failure."""

    atom: Atom
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def variables(self) -> FrozenSet[Var]:
        return self.atom.variables()

    def is_ground(self) -> bool:
        return self.atom.is_ground()

    def substitute(self, sub: Substitution) -> "Literal":
        return Literal(self.atom.substitute(sub), self.positive)

    def sort_key(self) -> tuple:
        return (0, self.atom.sort_key(), not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"not {self.atom}"


@dataclass(frozen=True)
class SymbolicSet:
    terms: Tuple[Term, ...]
    conj: Tuple[Atom, ...]

    def variables(self) -> FrozenSet[Var]:
        vs = {t for t in self.terms if isinstance(t, Var)}
        for a in self.conj:
            vs |= a.variables()
        return frozenset(vs)

    def substitute(self, sub: Substitution) -> "SymbolicSet":
        terms = tuple(sub.get(t, t) if isinstance(t, Var) else t for t in self.terms)
        return SymbolicSet(terms, tuple(a.substitute(sub) for a in self.conj))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.terms)) + " : " + ", ".join(map(str, self.conj)) + "}"


GroundElement = Tuple[Tuple[Constant, ...], Tuple[Atom, ...]]


@dataclass(frozen=True)
class GroundSet:
    """Instantiated set term: a true set of ``<consts : conj>`` pairs."""

    elements: FrozenSet[GroundElement]

    def __post_init__(self):
        if not isinstance(self.elements, frozenset):
            object.__setattr__(self, "elements", frozenset(self.elements))
        widths = {len(c) for c, _ in self.elements}
        if len(widths) > 1:
            raise ValueError("ground set elements must have tuples of equal length")

    @classmethod
    def of(cls, *elements) -> "GroundSet":
        """Build from ``(consts, conj)`` pairs; bare values/atoms are wrapped."""
        out = []
        for consts, conj in elements:
            if not isinstance(consts, tuple):
                consts = (consts,)
            if isinstance(conj, Atom):
                conj = (conj,)
            out.append((tuple(consts), tuple(conj)))
        return cls(frozenset(out))

    def atoms(self) -> FrozenSet[Atom]:
        return frozenset(a for _, conj in self.elements for a in conj)

    def sorted_elements(self):
        return sorted(
            self.elements,
            key=lambda e: (tuple(const_key(c) for c in e[0]), tuple(a.sort_key() for a in e[1])),
        )

    def variables(self) -> FrozenSet[Var]:
        return frozenset()

    def substitute(self, sub: Substitution) -> "GroundSet":
        return self

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        parts = []
        for consts, conj in self.sorted_elements():
            parts.append("<" + ",".join(map(str, consts)) + " : " + ", ".join(map(str, conj)) + ">")
        return "{" + ", ".join(parts) + "}"


SetTerm = Union[SymbolicSet, GroundSet]


@dataclass(frozen=True)
class Aggregate:
    """Aggregate atom ``#fn{...} cmp guard``."""

    fn: str
    set: SetTerm
    cmp: str
    guard: Term

    def __post_init__(self):
        if self.fn not in AGGREGATE_FUNCTIONS:
            raise ValueError(f"unknown aggregate function #{self.fn}")
        if self.cmp not in AGGREGATE_COMPARATORS:
            raise ValueError(f"unsupported aggregate comparator {self.cmp}")

    def is_ground(self) -> bool:
        return isinstance(self.set, GroundSet) and not isinstance(self.guard, Var)

    def set_variables(self) -> FrozenSet[Var]:
        return self.set.variables()

    def guard_variables(self) -> FrozenSet[Var]:
        return frozenset([self.guard]) if isinstance(self.guard, Var) else frozenset()

    def variables(self) -> FrozenSet[Var]:
        return self.set_variables() | self.guard_variables()

    def atoms(self) -> FrozenSet[Atom]:
        if isinstance(self.set, GroundSet):
            return self.set.atoms()
        return frozenset(self.set.conj)

    def substitute(self, sub: Substitution) -> "Aggregate":
        guard = sub.get(self.guard, self.guard) if isinstance(self.guard, Var) else self.guard
        return Aggregate(self.fn, self.set.substitute(sub), self.cmp, guard)

    def sort_key(self) -> tuple:
        return (1, str(self))

    def __str__(self) -> str:
        return f"#{self.fn}{self.set} {self.cmp} {self.guard}"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"

    def variables(self) -> FrozenSet[Var]:
        return expr_variables(self.left) | expr_variables(self.right)

    def __str__(self) -> str:
        def wrap(e):
            return f"({e})" if isinstance(e, BinOp) else str(e)

        return f"{wrap(self.left)}{self.op}{wrap(self.right)}"


Expr = Union[Term, BinOp]


def expr_variables(e) -> FrozenSet[Var]:
    if isinstance(e, Var):
        return frozenset([e])
    if isinstance(e, BinOp):
        return e.variables()
    return frozenset()


def substitute_expr(e, sub: Substitution):
    if isinstance(e, Var):
        return sub.get(e, e)
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute_expr(e.left, sub), substitute_expr(e.right, sub))
    return e


@dataclass(frozen=True)
class Comparison:
    """Built-in comparison ``left op right``; eliminated during grounding."""

    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in BUILTIN_COMPARATORS:
            raise ValueError(f"unknown built-in comparator {self.op}")

    def variables(self) -> FrozenSet[Var]:
        return expr_variables(self.left) | expr_variables(self.right)

    def is_ground(self) -> bool:
        return not self.variables()

    def substitute(self, sub: Substitution) -> "Comparison":
        return Comparison(self.op, substitute_expr(self.left, sub), substitute_expr(self.right, sub))

    def sort_key(self) -> tuple:
        return (2, str(self))

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"


BodyItem = Union[Literal, Aggregate, Comparison]


@dataclass(frozen=True)
class Rule:
    head: Atom
    body: Tuple[BodyItem, ...] = ()

    @property
    def is_fact(self) -> bool:
        return not self.body

    @property
    def positive_body(self) -> Tuple[Atom, ...]:
        """B+(r) as atoms."""
        return tuple(l.atom for l in self.body if isinstance(l, Literal) and l.positive)

    @property
    def negative_body(self) -> Tuple[Atom, ...]:
        """B-(r) as atoms (i.e. without the ``not``)."""
        return tuple(l.atom for l in self.body if isinstance(l, Literal) and not l.positive)

    @property
    def aggregates(self) -> Tuple[Aggregate, ...]:
        return tuple(l for l in self.body if isinstance(l, Aggregate))

    @property
    def builtins(self) -> Tuple[Comparison, ...]:
        return tuple(l for l in self.body if isinstance(l, Comparison))

    def is_ground(self) -> bool:
        if not self.head.is_ground():
            return False
        for l in self.body:
            if isinstance(l, Comparison):
                return False
            if not l.is_ground():
                return False
        return True

    def global_variables(self) -> FrozenSet[Var]:
        vs = set(self.head.variables())
        for l in self.body:
            if isinstance(l, Aggregate):
                vs |= l.guard_variables()
            else:
                vs |= l.variables()
        return frozenset(vs)

    def local_variables(self) -> FrozenSet[Var]:
        glob = self.global_variables()
        loc = set()
        for a in self.aggregates:
            loc |= a.set_variables()
        return frozenset(loc - glob)

    def variables(self) -> FrozenSet[Var]:
        return self.global_variables() | self.local_variables()

    def atoms(self) -> Iterator[Atom]:
        yield self.head
        for l in self.body:
            if isinstance(l, Literal):
                yield l.atom
            elif isinstance(l, Aggregate):
                yield from (l.set.conj if isinstance(l.set, SymbolicSet) else l.set.atoms())

    def substitute(self, sub: Substitution) -> "Rule":
        return Rule(self.head.substitute(sub), tuple(l.substitute(sub) for l in self.body))

    def sort_key(self) -> tuple:
        return (self.head.sort_key(), tuple(l.sort_key() for l in self.body))

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


def _term_constants(terms: Iterable) -> Iterator[Constant]:
    for t in terms:
        if not isinstance(t, Var):
            yield t


def _expr_constants(e) -> Iterator[Constant]:
    if isinstance(e, BinOp):
        yield from _expr_constants(e.left)
        yield from _expr_constants(e.right)
    elif not isinstance(e, Var):
        yield e


@dataclass(frozen=True)
class Program:
    rules: Tuple[Rule, ...] = ()

    def __post_init__(self):
        if not isinstance(self.rules, tuple):
            object.__setattr__(self, "rules", tuple(self.rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def is_ground(self) -> bool:
        return all(r.is_ground() for r in self.rules)

    def has_aggregates(self) -> bool:
        return any(r.aggregates for r in self.rules)

    def predicates(self) -> FrozenSet[Tuple[str, int]]:
        return frozenset(a.signature for r in self.rules for a in r.atoms())

    def universe(self) -> FrozenSet[Constant]:
        """U_P: every constant occurring anywhere in the program."""
        out = set()
        for r in self.rules:
            for a in r.atoms():
                out.update(_term_constants(a.args))
            for l in r.body:
                if isinstance(l, Aggregate):
                    if not isinstance(l.guard, Var):
                        out.add(l.guard)
                    if isinstance(l.set, SymbolicSet):
                        out.update(_term_constants(l.set.terms))
                    else:
                        for consts, _ in l.set.elements:
                            out.update(consts)
                elif isinstance(l, Comparison):
                    out.update(_expr_constants(l.left))
                    out.update(_expr_constants(l.right))
        return frozenset(out)

    def atoms(self) -> FrozenSet[Atom]:
        """Ground atoms occurring in the program (used as the base of ground programs)."""
        return frozenset(a for r in self.rules for a in r.atoms() if a.is_ground())

    def herbrand_base(self) -> FrozenSet[Atom]:
        """B_P: all atoms over the program's predicates and U_P."""
        u = sorted(self.universe(), key=const_key)
        out = set()
        for pred, n in self.predicates():
            for args in itertools.product(u, repeat=n):
                out.add(Atom(pred, args))
        return frozenset(out)

    def sorted(self) -> "Program":
        return Program(tuple(sorted(set(self.rules), key=Rule.sort_key)))

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)


class MonotonicityClass(enum.Enum):
    MONOTONE = "monotone"
    ANTIMONOTONE = "antimonotone"
    NONMONOTONE = "nonmonotone"


def sort_atoms(atoms: Iterable[Atom]):
    return sorted(atoms, key=Atom.sort_key)
