"""Random program generators for property tests and experiments.

Ground generators use propositional atoms ``p0, p1, ...`` so that every atom
is its own predicate, which lets predicate-level analyses (stratification)
see the exact ground dependency structure.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Sequence

from .analysis import classify_monotonicity
from .evaluation import Interpretation
from .syntax import Aggregate, Atom, GroundSet, Literal, MonotonicityClass, Program, Rule


@dataclass(frozen=True)
class GroundProgramConfig:
    max_atoms: int = 6
    max_rules: int = 8
    max_body: int = 3
    aggregate_prob: float = 0.0
    max_set_size: int = 3
    max_weight: int = 3


def propositional_atoms(n: int) -> List[Atom]:
    return [Atom(f"p{k}") for k in range(n)]


# the (function, comparator) pairs that are monotone or antimonotone for
# non-negative weights (positive weights for times)
MA_SCHEMAS = [
    ("count", ">"), ("count", ">="), ("count", "<"), ("count", "<="),
    ("sum", ">"), ("sum", ">="), ("sum", "<"), ("sum", "<="),
    ("times", ">"), ("times", ">="), ("times", "<"), ("times", "<="),
    ("max", ">"), ("max", ">="), ("min", "<"), ("min", "<="),
]
COMPILABLE_SCHEMAS = [s for s in MA_SCHEMAS if s[0] in ("count", "sum", "times")]
ANTIMONOTONE_SCHEMAS = [s for s in COMPILABLE_SCHEMAS if s[1] in ("<", "<=")]


def random_ground_set(rng: random.Random, atoms: Sequence[Atom], fn: str, size: int, max_weight: int,
                      max_conj: int = 2) -> GroundSet:
    low = 1 if fn == "times" else 0
    elements = set()
    for k in range(size):
        conj = tuple(rng.sample(list(atoms), rng.randint(1, min(max_conj, len(atoms)))))
        # a distinct second constant keeps equal weights from collapsing
        elements.add(((rng.randint(low, max_weight), k), conj))
    return GroundSet(frozenset(elements))


def random_aggregate(rng: random.Random, atoms: Sequence[Atom], schemas=MA_SCHEMAS, max_set_size: int = 3,
                     max_weight: int = 3, max_conj: int = 2) -> Aggregate:
    fn, cmp = rng.choice(list(schemas))
    s = random_ground_set(rng, atoms, fn, rng.randint(0, max_set_size), max_weight, max_conj)
    top = {"count": max_set_size, "sum": max_set_size * max_weight, "times": max_weight ** 2}.get(fn, max_weight)
    return Aggregate(fn, s, cmp, rng.randint(0, top + 1))


def random_interpretation(rng: random.Random, atoms: Sequence[Atom]) -> Interpretation:
    true, false = [], []
    for a in atoms:
        r = rng.random()
        if r < 1 / 3:
            true.append(a)
        elif r < 2 / 3:
            false.append(a)
    return Interpretation(frozenset(true), frozenset(false))


def random_ground_program(rng: random.Random, cfg: GroundProgramConfig = GroundProgramConfig(),
                          schemas=MA_SCHEMAS) -> Program:
    """A ground program whose aggregates are all monotone or antimonotone."""
    atoms = propositional_atoms(rng.randint(1, cfg.max_atoms))
    rules = []
    for _ in range(rng.randint(1, cfg.max_rules)):
        head = rng.choice(atoms)
        body = []
        for _ in range(rng.randint(0, cfg.max_body)):
            if rng.random() < cfg.aggregate_prob:
                body.append(random_aggregate(rng, atoms, schemas, cfg.max_set_size, cfg.max_weight))
            else:
                body.append(Literal(rng.choice(atoms), rng.random() < 0.5))
        rules.append(Rule(head, tuple(body)))
    return Program(tuple(rules))


def random_stratified_program(rng: random.Random, cfg: GroundProgramConfig = GroundProgramConfig(aggregate_prob=0.3)) -> Program:
    """A ground program with a level mapping built in.

    Atoms get random levels.  Positive literals and monotone aggregates may
    refer to atoms of the same or lower level, negative literals and
    antimonotone aggregates only to strictly lower levels.
    """
    atoms = propositional_atoms(rng.randint(1, cfg.max_atoms))
    level = {a: rng.randint(0, 2) for a in atoms}
    rules = []
    for _ in range(rng.randint(1, cfg.max_rules)):
        head = rng.choice(atoms)
        same = [a for a in atoms if level[a] <= level[head]]
        lower = [a for a in atoms if level[a] < level[head]]
        body = []
        for _ in range(rng.randint(0, cfg.max_body)):
            if rng.random() < cfg.aggregate_prob:
                agg = random_aggregate(rng, same, MA_SCHEMAS, cfg.max_set_size, cfg.max_weight)
                if classify_monotonicity(agg) is MonotonicityClass.MONOTONE:
                    body.append(agg)
                elif lower:
                    body.append(random_aggregate(rng, lower, ANTIMONOTONE_SCHEMAS, cfg.max_set_size, cfg.max_weight))
            elif rng.random() < 0.5 or not lower:
                body.append(Literal(rng.choice(same)))
            else:
                body.append(Literal(rng.choice(lower), False))
        rules.append(Rule(head, tuple(body)))
    return Program(tuple(rules))


# -- non-ground programs for the compiler ---------------------------------------

_TEMPLATES = [
    "{h}(X) :- d(X), #{fn}{{Y : e(X,Y), {b}(Y)}} {cmp} {k}.",
    "{h}(X) :- d(X), #{fn}{{Y : e(Y,X), {b}(Y)}} {cmp} {k}.",
    "{h}(X) :- d(X), k(K), #{fn}{{Y : e(X,Y), {b}(Y)}} {cmp} K.",
    "{h}(X) :- d(X), #{fn}{{Y,Z : e(X,Y), {b}(Z)}} {cmp} {k}.",
    "{h}(X) :- d(X), not {b}(X).",
    "{h}(X) :- e(X,Y), {b}(Y).",
    "{h}(X) :- d(X), #{fn}{{Y : {b}(Y)}} {cmp} {k}.",
    "{h} :- #{fn}{{Y : {b}(Y)}} {cmp} {k}.",
]


def random_mae_program_text(rng: random.Random, n_consts: int = 3, n_rules: int = 3) -> str:
    """A small non-ground program with #count, #sum and #times aggregates.

    Every constant, guards included, is a positive integer, so even the
    naive instantiation over the whole universe keeps ``#times`` weights in
    its monotone domain.
    """
    consts = list(range(1, n_consts + 1))
    lines = [f"d({c})." for c in consts]
    for x in consts:
        for y in consts:
            if rng.random() < 0.4:
                lines.append(f"e({x},{y}).")
    lines.append(f"k({rng.randint(1, 3)}).")
    preds = ["q", "r", "s"]
    for c in consts:
        if rng.random() < 0.3:
            lines.append(f"{rng.choice(preds)}({c}).")
    for _ in range(n_rules):
        t = rng.choice(_TEMPLATES)
        fn, cmp = rng.choice(COMPILABLE_SCHEMAS)
        h = rng.choice(preds)
        if "{h} :-" in t:
            h = "z" + h
        lines.append(t.format(h=h, b=rng.choice(preds), fn=fn, cmp=cmp, k=rng.randint(1, 4)))
    return "\n".join(lines) + "\n"
