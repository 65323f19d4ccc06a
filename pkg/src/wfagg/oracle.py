"""Exhaustive reference implementations, used only to cross-check the engine.

Everything here enumerates subsets or total extensions directly from the
definitions, so sizes are guarded and exceeding a guard is an error rather
than an approximation.
"""
from __future__ import annotations

import itertools
from typing import FrozenSet, Iterable, List, Optional, Set

from .analysis import classify_monotonicity
from .evaluation import FALSE, TRUE, UNDEFINED, Interpretation, TruthValue, aggregate_holds
from .syntax import Aggregate, Atom, MonotonicityClass, Program, sort_atoms

MAX_ATOMS = 15


class OracleSizeError(ValueError):
    pass


def _guard(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise OracleSizeError(f"{what}: {n} atoms exceed the oracle cap of {cap}")


def _subsets(atoms: List[Atom]):
    for k in range(len(atoms) + 1):
        for c in itertools.combinations(atoms, k):
            yield frozenset(c)


def brute_eval_aggregate(i: Interpretation, agg: Aggregate, cap: int = MAX_ATOMS) -> TruthValue:
    """Truth of any ground aggregate by checking every total extension of ``i``."""
    undecided = sort_atoms(a for a in agg.set.atoms() if a not in i.true and a not in i.false)
    _guard(len(undecided), cap, f"aggregate `{agg}`")
    seen = set()
    for extra in _subsets(undecided):
        true = i.true | extra
        seen.add(aggregate_holds(agg, true.__contains__))
        if len(seen) == 2:
            return UNDEFINED
    return TRUE if seen == {True} else FALSE


def brute_eval_literal(i: Interpretation, lit, cap: int = MAX_ATOMS) -> TruthValue:
    if isinstance(lit, Aggregate):
        return brute_eval_aggregate(i, lit, cap)
    v = i.value(lit.atom)
    if lit.positive or v is UNDEFINED:
        return v
    return FALSE if v is TRUE else TRUE


def _is_antimonotone_part(lit) -> bool:
    return classify_monotonicity(lit) is MonotonicityClass.ANTIMONOTONE


def brute_is_unfounded(program: Program, i: Interpretation, x: Iterable[Atom], cap: int = MAX_ATOMS) -> bool:
    """Unfounded-set condition with every literal evaluated exhaustively.

    The body is split into antimonotone and monotone parts by the static
    classifier; their truth values come from :func:`brute_eval_literal`.
    """
    x = frozenset(x)
    j = i.override_false(x)
    for r in program.rules:
        if r.head not in x:
            continue
        anti = [l for l in r.body if _is_antimonotone_part(l)]
        mono = [l for l in r.body if not _is_antimonotone_part(l)]
        if any(brute_eval_literal(i, l, cap) is FALSE for l in anti):
            continue
        if any(brute_eval_literal(j, l, cap) is FALSE for l in mono):
            continue
        return False
    return True


def brute_unfounded_sets(
    program: Program, i: Interpretation, base: Optional[Iterable[Atom]] = None, cap: int = MAX_ATOMS
) -> Set[FrozenSet[Atom]]:
    """Every unfounded set of ``program`` w.r.t. ``i``, by subset enumeration."""
    b = sort_atoms(base if base is not None else program.atoms())
    _guard(len(b), cap, "base")
    return {x for x in _subsets(b) if brute_is_unfounded(program, i, x, cap)}


def brute_gus(program: Program, i: Interpretation, base=None, cap: int = MAX_ATOMS) -> FrozenSet[Atom]:
    out: Set[Atom] = set()
    for x in brute_unfounded_sets(program, i, base, cap):
        out |= x
    return frozenset(out)


def brute_t_p(program: Program, i: Interpretation, cap: int = MAX_ATOMS) -> FrozenSet[Atom]:
    return frozenset(r.head for r in program.rules if all(brute_eval_literal(i, l, cap) is TRUE for l in r.body))


def brute_w_p(program: Program, i: Interpretation, base=None, cap: int = MAX_ATOMS) -> Interpretation:
    return Interpretation(brute_t_p(program, i, cap), brute_gus(program, i, base, cap))


def brute_wfm(program: Program, base: Optional[Iterable[Atom]] = None, cap: int = MAX_ATOMS) -> Interpretation:
    """Least fixpoint of the well-founded operator with the GUS taken as a brute union."""
    b = frozenset(base) if base is not None else program.atoms()
    w = Interpretation()
    while True:
        nxt = brute_w_p(program, w, b, cap)
        if nxt == w:
            return w
        w = nxt


# -- aggregate-free programs --------------------------------------------------


def _require_aggregate_free(program: Program) -> None:
    if program.has_aggregates():
        raise ValueError("this oracle only handles aggregate-free programs")


def van_gelder_unfounded(program: Program, i: Interpretation, x: Iterable[Atom]) -> bool:
    """Classical condition: some body literal is false in ``i`` or some positive body atom is in ``x``."""
    _require_aggregate_free(program)
    x = frozenset(x)
    for r in program.rules:
        if r.head not in x:
            continue
        if any((l.positive and l.atom in i.false) or (not l.positive and l.atom in i.true) for l in r.body):
            continue
        if any(l.positive and l.atom in x for l in r.body):
            continue
        return False
    return True


def _least_model_of_reduct(rules, assumed_false: FrozenSet[Atom]) -> FrozenSet[Atom]:
    """Least model of the positive program obtained by keeping rules whose negated atoms are in ``assumed_false``."""
    kept = [r for r in rules if all(l.positive or l.atom in assumed_false for l in r.body)]
    derived: Set[Atom] = set()
    changed = True
    while changed:
        changed = False
        for r in kept:
            if r.head not in derived and all(l.atom in derived for l in r.body if l.positive):
                derived.add(r.head)
                changed = True
    return frozenset(derived)


def alternating_fixpoint_wfm(program: Program, base: Optional[Iterable[Atom]] = None) -> Interpretation:
    """Well-founded model of an aggregate-free program by the alternating fixpoint.

    ``true`` grows from the empty set and ``possible`` shrinks from the base;
    each is the least model of the program with negation fixed by the other.
    """
    _require_aggregate_free(program)
    b = frozenset(base) if base is not None else program.atoms()
    rules = program.rules
    true: FrozenSet[Atom] = frozenset()
    while True:
        possible = _least_model_of_reduct(rules, b - true)
        nxt = _least_model_of_reduct(rules, b - possible)
        if nxt == true:
            return Interpretation(true, b - possible)
        true = nxt
