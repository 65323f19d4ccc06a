"""Answer sets of ground programs: reduct, checks and exhaustive enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional

from .engine import compiled, gus, is_unfounded_set
from .evaluation import Interpretation, TRUE, eval_literal, is_model
from .syntax import Atom, Program, sort_atoms

DEFAULT_CAP = 20


class SizeGuardError(ValueError):
    pass


def _base(program: Program, base) -> FrozenSet[Atom]:
    return frozenset(base) if base is not None else program.atoms()


def _check_total(m: Interpretation, base) -> None:
    if not m.is_total(base):
        missing = sort_atoms(set(base) - m.true - m.false)
        raise ValueError("interpretation is not total; undecided: " + ", ".join(map(str, missing)))


def reduct(program: Program, m: Interpretation) -> Program:
    """Rules of ``program`` whose body is entirely true in the total ``m``."""
    return Program(tuple(r for r in program.rules if all(eval_literal(m, l) is TRUE for l in r.body)))


def is_answer_set(program: Program, m: Interpretation, base: Optional[Iterable[Atom]] = None) -> bool:
    """Answer-set check through the greatest unfounded set.

    ``m`` is an answer set iff the GUS with respect to ``m`` is exactly the set
    of atoms false in ``m``.
    """
    b = _base(program, base)
    _check_total(m, b)
    return gus(program, m, base=b) == (m.false & b)


@dataclass(frozen=True)
class AnswerSetReport:
    model: bool
    unfounded_free: bool
    gus_matches: bool

    @property
    def answer_set(self) -> bool:
        return self.gus_matches


def answer_set_report(program: Program, m: Interpretation, base: Optional[Iterable[Atom]] = None) -> AnswerSetReport:
    """All three characterizations of an answer set, evaluated separately."""
    b = _base(program, base)
    _check_total(m, b)
    c = compiled(program, b)
    g = gus(c, m)
    return AnswerSetReport(
        model=is_model(m, program),
        unfounded_free=g.isdisjoint(m.true),
        gus_matches=g == (m.false & b),
    )


def is_answer_set_by_reduct(
    program: Program, m: Interpretation, base: Optional[Iterable[Atom]] = None, cap: int = DEFAULT_CAP
) -> bool:
    """Definition-level check: ``m`` is a minimal model of its reduct.

    Searches every proper subset of the true atoms of ``m``, so it works for
    arbitrary aggregates but only at small scale (``cap`` true atoms).
    """
    b = _base(program, base)
    _check_total(m, b)
    if len(m.true) > cap:
        raise SizeGuardError(f"{len(m.true)} true atoms exceed the cap of {cap}")
    red = reduct(program, m)
    if not is_model(m, red):
        return False
    true = sort_atoms(m.true)
    for k in range(len(true)):
        for subset in itertools.combinations(true, k):
            if is_model(Interpretation.total(subset, b), red):
                return False
    return True


def enumerate_answer_sets(program: Program, cap: int = DEFAULT_CAP, base: Optional[Iterable[Atom]] = None) -> List[Interpretation]:
    """Every answer set, by testing all total interpretations of the base.

    Results are ordered lexicographically by their sorted true atoms.
    """
    b = _base(program, base)
    if len(b) > cap:
        raise SizeGuardError(f"base has {len(b)} atoms, cap is {cap}")
    c = compiled(program, b)
    atoms = sort_atoms(b)
    found = []
    for bits in itertools.product((False, True), repeat=len(atoms)):
        m = Interpretation.total((a for a, on in zip(atoms, bits) if on), b)
        if gus(c, m) == m.false:
            found.append(m)
    return sorted(found, key=lambda m: [a.sort_key() for a in sort_atoms(m.true)])


def total_model_is_unfounded(program: Program, m: Interpretation, base=None) -> bool:
    """Whether the false atoms of the total ``m`` form an unfounded set."""
    b = _base(program, base)
    return is_unfounded_set(program, m, m.false & b)
