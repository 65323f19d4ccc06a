"""Unfounded sets and the well-founded operator for ground programs.

All operators work on ground programs whose aggregate literals are
monotone or antimonotone.  The base of a ground program is the set of atoms
occurring in it unless an explicit ``base`` is passed; atoms outside it
have no rules and are false in every model computed here.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .analysis import classify_monotonicity
from .evaluation import (
    InconsistentInterpretationError,
    Interpretation,
    NonMonotoneAggregateError,
    aggregate_holds,
)
from .syntax import Aggregate, Atom, Literal, MonotonicityClass, Program

MONO = MonotonicityClass.MONOTONE
ANTI = MonotonicityClass.ANTIMONOTONE


@dataclass(frozen=True)
class _Rule:
    head: Atom
    pos: FrozenSet[Atom]
    neg: FrozenSet[Atom]
    mono: Tuple[Aggregate, ...]
    anti: Tuple[Aggregate, ...]


class CompiledProgram:
    """A ground program split into monotone and antimonotone body parts.

    Building one validates the program; reuse it when applying several
    operators to the same program.
    """

    def __init__(self, program: Program, base: Optional[Iterable[Atom]] = None):
        if isinstance(program, CompiledProgram):
            raise TypeError("already compiled")
        self.program = program
        self.base: FrozenSet[Atom] = frozenset(base) if base is not None else program.atoms()
        self.rules: List[_Rule] = []
        for r in program.rules:
            if not r.is_ground():
                raise ValueError(f"rule is not ground: `{r}`")
            mono, anti = [], []
            for agg in r.aggregates:
                cls = classify_monotonicity(agg)
                if cls is MONO:
                    mono.append(agg)
                elif cls is ANTI:
                    anti.append(agg)
                else:
                    raise NonMonotoneAggregateError(agg)
            self.rules.append(_Rule(r.head, frozenset(r.positive_body), frozenset(r.negative_body), tuple(mono), tuple(anti)))
        self.pos_watch: Dict[Atom, List[int]] = defaultdict(list)
        self.agg_watch: Dict[Atom, List[Tuple[int, int]]] = defaultdict(list)
        for k, r in enumerate(self.rules):
            for a in r.pos:
                self.pos_watch[a].append(k)
            for j, agg in enumerate(r.mono):
                for a in agg.set.atoms():
                    self.agg_watch[a].append((k, j))


def compiled(program, base=None) -> CompiledProgram:
    if isinstance(program, CompiledProgram):
        if base is not None and frozenset(base) != program.base:
            return CompiledProgram(program.program, base)
        return program
    return CompiledProgram(program, base)


def _body_true(r: _Rule, i: Interpretation) -> bool:
    t, f = i.true, i.false
    if not r.pos <= t or not r.neg <= f:
        return False
    for agg in r.mono:
        if not aggregate_holds(agg, t.__contains__):
            return False
    for agg in r.anti:
        if not aggregate_holds(agg, lambda a: a not in f):
            return False
    return True


def _antimonotone_false(r: _Rule, i: Interpretation) -> bool:
    if not r.neg.isdisjoint(i.true):
        return True
    t = i.true
    return any(not aggregate_holds(agg, t.__contains__) for agg in r.anti)


def t_p(program, i: Interpretation) -> FrozenSet[Atom]:
    """Immediate consequences: heads of rules whose body is true in ``i``."""
    c = compiled(program)
    return frozenset(r.head for r in c.rules if _body_true(r, i))


def is_unfounded_set(program, i: Interpretation, x: Iterable[Atom]) -> bool:
    c = compiled(program)
    x = frozenset(x)
    j = i.override_false(x)
    jf = j.false
    for r in c.rules:
        if r.head not in x:
            continue
        if _antimonotone_false(r, i):
            continue
        if not r.pos.isdisjoint(jf):
            continue
        if any(not aggregate_holds(agg, lambda a: a not in jf) for agg in r.mono):
            continue
        return False
    return True


def phi_step(program, i: Interpretation, y: Iterable[Atom]) -> FrozenSet[Atom]:
    """One application of the operator whose least fixpoint complements the GUS."""
    c = compiled(program)
    support = frozenset(y) - i.false
    out = set()
    for r in c.rules:
        if _antimonotone_false(r, i):
            continue
        if r.pos <= support and all(aggregate_holds(agg, support.__contains__) for agg in r.mono):
            out.add(r.head)
    return frozenset(out)


def phi_fixpoint(program, i: Interpretation) -> FrozenSet[Atom]:
    """Least fixpoint of :func:`phi_step` from the empty set (worklist form)."""
    c = compiled(program)
    eligible = [not _antimonotone_false(r, i) for r in c.rules]
    missing = [0] * len(c.rules)
    done: Set[Tuple[int, int]] = set()
    empty: FrozenSet[Atom] = frozenset()
    queue: List[Atom] = []
    for k, r in enumerate(c.rules):
        if not eligible[k]:
            continue
        m = len(r.pos)
        for j, agg in enumerate(r.mono):
            if aggregate_holds(agg, empty.__contains__):
                done.add((k, j))
            else:
                m += 1
        missing[k] = m
        if m == 0:
            queue.append(r.head)
    y: Set[Atom] = set()
    support: Set[Atom] = set()
    false = i.false
    while queue:
        h = queue.pop()
        if h in y:
            continue
        y.add(h)
        if h in false:
            continue
        support.add(h)
        for k in c.pos_watch.get(h, ()):
            if eligible[k]:
                missing[k] -= 1
                if missing[k] == 0:
                    queue.append(c.rules[k].head)
        for k, j in c.agg_watch.get(h, ()):
            if eligible[k] and (k, j) not in done:
                if aggregate_holds(c.rules[k].mono[j], support.__contains__):
                    done.add((k, j))
                    missing[k] -= 1
                    if missing[k] == 0:
                        queue.append(c.rules[k].head)
    return frozenset(y)


def gus(program, i: Interpretation, base: Optional[Iterable[Atom]] = None) -> FrozenSet[Atom]:
    """Greatest unfounded set of ``program`` with respect to ``i``."""
    c = compiled(program, base)
    return c.base - phi_fixpoint(c, i)


def w_p(program, i: Interpretation, base: Optional[Iterable[Atom]] = None) -> Interpretation:
    """Well-founded operator: consequences true, greatest unfounded set false.

    Raises :class:`InconsistentInterpretationError` if the two parts overlap,
    which cannot happen along the sequence starting from the empty
    interpretation but can for arbitrary ``i``.
    """
    c = compiled(program, base)
    true = t_p(c, i)
    false = gus(c, i)
    clash = true & false
    if clash:
        raise InconsistentInterpretationError(clash)
    return Interpretation(true, false)


@dataclass(frozen=True)
class WellFoundedModel:
    model: Interpretation
    total: bool
    iterations: int
    base: FrozenSet[Atom]

    @property
    def true(self) -> FrozenSet[Atom]:
        return self.model.true

    @property
    def false(self) -> FrozenSet[Atom]:
        return self.model.false

    @property
    def undefined(self) -> FrozenSet[Atom]:
        return self.base - self.model.true - self.model.false


def wfs_sequence(program, base: Optional[Iterable[Atom]] = None) -> Iterator[Interpretation]:
    """Yield W_1, W_2, ... up to and including the least fixpoint."""
    c = compiled(program, base)
    w = Interpretation()
    while True:
        nxt = w_p(c, w)
        yield nxt
        if nxt == w:
            return
        w = nxt


def well_founded_model(program, base: Optional[Iterable[Atom]] = None) -> WellFoundedModel:
    """Least fixpoint of the well-founded operator starting from the empty set.

    Rejects programs with a nonmonotone aggregate literal by raising
    :class:`NonMonotoneAggregateError` naming the literal.
    """
    c = compiled(program, base)
    steps = 0
    w = Interpretation()
    for w in wfs_sequence(c):
        steps += 1
    if steps > len(c.base) + 1:
        raise AssertionError(f"{steps} iterations exceed |B_P| + 1 = {len(c.base) + 1}")
    return WellFoundedModel(w, w.is_total(c.base), steps, c.base)
