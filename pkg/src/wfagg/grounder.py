"""Instantiation of safe programs.

Two strategies are provided:

``naive``
    Every global variable ranges over the universe, every local variable of
    a set term ranges over the universe.  This is the textbook Ground(P) and
    is what ``wfagg ground`` prints by default.

``relevant``
    Substitutions are generated by joining positive body atoms against the
    atoms derivable by the positive relaxation of the program (negative
    literals and aggregates treated as true).  Set elements whose
    conjunction mentions an underivable atom are dropped.  The dropped
    atoms are false in the well-founded model and in every answer set, so
    the semantics restricted to the remaining atoms is unchanged; this is
    the strategy used for solving.

Variables bound by an assignment ``X = expr`` are computed rather than
enumerated.  Under ``naive`` the universe stays the constants of the
program, so computed values can appear in heads but are never enumerated
for body variables; recursive arithmetic (as in compiled aggregates) needs
``relevant``, whose domain grows with every derivable value.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .analysis import check_program_safety
from .syntax import (
    Aggregate,
    Atom,
    BinOp,
    Comparison,
    GroundSet,
    Literal,
    Program,
    Rule,
    Substitution,
    SymbolicSet,
    Var,
    const_key,
    expr_variables,
)

STRATEGIES = ("naive", "relevant")


class GroundingError(RuntimeError):
    pass


class _NotANumber(Exception):
    pass


def eval_expr(e, sub: Substitution):
    if isinstance(e, Var):
        return sub[e]
    if isinstance(e, BinOp):
        l, r = eval_expr(e.left, sub), eval_expr(e.right, sub)
        if not (isinstance(l, int) and isinstance(r, int)):
            raise _NotANumber
        if e.op == "+":
            return l + r
        if e.op == "-":
            return l - r
        return l * r
    return e


def compare(op: str, left, right) -> bool:
    """Built-in comparison under the global total order on constants."""
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    kl, kr = const_key(left), const_key(right)
    if op == "<":
        return kl < kr
    if op == "<=":
        return kl <= kr
    if op == ">":
        return kl > kr
    return kl >= kr


def _assignment(c: Comparison, bound) -> Optional[Tuple[Var, object]]:
    if c.op != "=":
        return None
    for lhs, rhs in ((c.left, c.right), (c.right, c.left)):
        if isinstance(lhs, Var) and lhs not in bound and expr_variables(rhs) <= bound:
            return lhs, rhs
    return None


def _apply_builtins(pending: List[Comparison], sub: Dict) -> Optional[List[Comparison]]:
    """Evaluate every built-in that has become decidable; bind assignments.

    Mutates ``sub``.  Returns the still-pending built-ins, or ``None`` if some
    built-in is false (or its arithmetic is undefined).
    """
    pending = list(pending)
    progress = True
    while progress:
        progress = False
        rest = []
        for c in pending:
            if c.variables() <= sub.keys():
                try:
                    ok = compare(c.op, eval_expr(c.left, sub), eval_expr(c.right, sub))
                except _NotANumber:
                    return None
                if not ok:
                    return None
                progress = True
                continue
            asg = _assignment(c, sub.keys())
            if asg is not None:
                var, rhs = asg
                try:
                    sub[var] = eval_expr(rhs, sub)
                except _NotANumber:
                    return None
                progress = True
                continue
            rest.append(c)
        pending = rest
    return pending


def instantiate_set(s: SymbolicSet, universe: Iterable) -> GroundSet:
    """inst(S) over ``universe`` for a set term without global variables."""
    local = sorted(s.variables(), key=lambda v: v.name)
    u = sorted(set(universe), key=const_key)
    elements = set()
    for values in itertools.product(u, repeat=len(local)):
        sub = dict(zip(local, values))
        g = s.substitute(sub)
        elements.add((g.terms, g.conj))
    return GroundSet(frozenset(elements))


def _instantiate_body(rule: Rule, sub: Substitution, make_set) -> Rule:
    body = []
    for item in rule.body:
        if isinstance(item, Comparison):
            continue
        if isinstance(item, Aggregate):
            g = item.substitute(sub)
            set_term = make_set(g.set) if isinstance(g.set, SymbolicSet) else g.set
            body.append(Aggregate(g.fn, set_term, g.cmp, g.guard))
        else:
            body.append(item.substitute(sub))
    return Rule(rule.head.substitute(sub), tuple(body))


# -- naive -------------------------------------------------------------------


def _naive_substitutions(rule: Rule, universe: Sequence) -> Iterator[Dict]:
    enum_vars = set()
    for a in rule.positive_body:
        enum_vars |= a.variables()
    enum_vars = sorted(enum_vars, key=lambda v: v.name)
    builtins = list(rule.builtins)
    for values in itertools.product(universe, repeat=len(enum_vars)):
        sub = dict(zip(enum_vars, values))
        rest = _apply_builtins(builtins, sub)
        if rest is None:
            continue
        if rest:
            raise GroundingError(f"cannot evaluate built-ins {', '.join(map(str, rest))} in `{rule}`")
        yield sub


def _ground_naive(program: Program, max_rules: int) -> Program:
    u = sorted(program.universe(), key=const_key)
    rules = set()
    for r in program.rules:
        for sub in _naive_substitutions(r, u):
            rules.add(_instantiate_body(r, sub, lambda s: instantiate_set(s, u)))
            if len(rules) > max_rules:
                raise GroundingError(f"more than {max_rules} ground rules")
    return Program(tuple(sorted(rules, key=Rule.sort_key)))


# -- relevant ------------------------------------------------------------------


class _Index:
    def __init__(self, atoms: Iterable[Atom]):
        self.by_sig: Dict[Tuple[str, int], List[Atom]] = defaultdict(list)
        for a in atoms:
            self.by_sig[a.signature].append(a)
        self._keyed: Dict[tuple, Dict[tuple, List[Atom]]] = {}

    def lookup(self, sig, positions: Tuple[int, ...], values: tuple) -> List[Atom]:
        if not positions:
            return self.by_sig.get(sig, [])
        key = (sig, positions)
        table = self._keyed.get(key)
        if table is None:
            table = defaultdict(list)
            for a in self.by_sig.get(sig, []):
                table[tuple(a.args[i] for i in positions)].append(a)
            self._keyed[key] = table
        return table.get(values, [])


def _match(pattern: Atom, ground: Atom, sub: Dict) -> Optional[Dict]:
    out = None
    for p, g in zip(pattern.args, ground.args):
        if isinstance(p, Var):
            cur = (out or sub).get(p, _MISSING)
            if cur is _MISSING:
                if out is None:
                    out = dict(sub)
                out[p] = g
            elif cur != g:
                return None
        elif p != g:
            return None
    return out if out is not None else dict(sub)


_MISSING = object()


def _join(atoms: Sequence[Atom], builtins: Sequence[Comparison], index: _Index, sub: Dict) -> Iterator[Dict]:
    pending = _apply_builtins(list(builtins), sub)
    if pending is None:
        return
    if not atoms:
        if pending:
            raise GroundingError(f"cannot evaluate built-ins {', '.join(map(str, pending))}")
        yield sub
        return

    # most-bound atom first
    def boundness(a: Atom):
        return -sum(1 for t in a.args if not isinstance(t, Var) or t in sub)

    k = min(range(len(atoms)), key=lambda j: (boundness(atoms[j]), j))
    chosen = atoms[k]
    rest = list(atoms[:k]) + list(atoms[k + 1:])
    positions, values = [], []
    for i, t in enumerate(chosen.args):
        if isinstance(t, Var):
            if t in sub:
                positions.append(i)
                values.append(sub[t])
        else:
            positions.append(i)
            values.append(t)
    for g in index.lookup(chosen.signature, tuple(positions), tuple(values)):
        s2 = _match(chosen, g, sub)
        if s2 is not None:
            yield from _join(rest, pending, index, s2)


def _relevant_set(s: SymbolicSet, index: _Index) -> GroundSet:
    elements = set()
    for sub in _join(s.conj, (), index, {}):
        g = s.substitute(sub)
        elements.add((g.terms, g.conj))
    return GroundSet(frozenset(elements))


def _ground_relevant(program: Program, max_atoms: int) -> Program:
    domain = set()
    while True:
        index = _Index(domain)
        subs = []
        new = set()
        for r in program.rules:
            for sub in _join(r.positive_body, r.builtins, index, {}):
                subs.append((r, sub))
                h = r.head.substitute(sub)
                if h not in domain:
                    new.add(h)
        if not new:
            break
        domain |= new
        if len(domain) > max_atoms:
            raise GroundingError(f"more than {max_atoms} derivable atoms")
    rules = {_instantiate_body(r, sub, lambda s: _relevant_set(s, index)) for r, sub in subs}
    return Program(tuple(sorted(rules, key=Rule.sort_key)))


def ground(program: Program, strategy: str = "naive", limit: int = 1_000_000) -> Program:
    """Instantiate a safe program.

    Returns a ground program without built-ins whose rules are deduplicated
    and sorted canonically.  Raises :class:`~wfagg.analysis.UnsafeRuleError`
    for unsafe input and :class:`GroundingError` when the ground rules
    (``naive``) or the derivable atoms (``relevant``) exceed ``limit``.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown grounding strategy {strategy!r}")
    check_program_safety(program)
    if strategy == "naive":
        return _ground_naive(program, limit)
    return _ground_relevant(program, limit)
