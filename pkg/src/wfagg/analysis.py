"""Static analysis: safety, monotonicity of literals, stratification."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import networkx as nx

from .syntax import (
    Aggregate,
    Comparison,
    GroundSet,
    Literal,
    MonotonicityClass,
    Program,
    Rule,
    SymbolicSet,
    Var,
    expr_variables,
)

MONO = MonotonicityClass.MONOTONE
ANTI = MonotonicityClass.ANTIMONOTONE
NONMONO = MonotonicityClass.NONMONOTONE

GLOBAL_CONDITION = "global-condition"
LOCAL_CONDITION = "local-condition"


@dataclass(frozen=True)
class SafetyViolation:
    variable: Var
    condition: str

    def __str__(self) -> str:
        which = "does not occur in a positive body literal" if self.condition == GLOBAL_CONDITION \
            else "does not occur in the conjunction of its set term"
        return f"variable {self.variable} {which}"


class UnsafeRuleError(ValueError):
    def __init__(self, rule: Rule, violation: SafetyViolation):
        super().__init__(f"unsafe rule `{rule}`: {violation}")
        self.rule = rule
        self.violation = violation


def _ordered_variables(rule: Rule) -> List[Var]:
    seen: Dict[Var, None] = {}
    for a in rule.head.args:
        if isinstance(a, Var):
            seen.setdefault(a)
    for item in rule.body:
        if isinstance(item, Literal):
            for a in item.atom.args:
                if isinstance(a, Var):
                    seen.setdefault(a)
        elif isinstance(item, Aggregate):
            if isinstance(item.guard, Var):
                seen.setdefault(item.guard)
        else:
            for v in sorted(item.variables(), key=lambda v: v.name):
                seen.setdefault(v)
    return list(seen)


def bound_variables(rule: Rule) -> set:
    """Variables bound by B+ or by an assignment ``X = expr`` over bound variables."""
    bound = set()
    for a in rule.positive_body:
        bound |= a.variables()
    changed = True
    while changed:
        changed = False
        for c in rule.builtins:
            if c.op != "=":
                continue
            for lhs, rhs in ((c.left, c.right), (c.right, c.left)):
                if isinstance(lhs, Var) and lhs not in bound and expr_variables(rhs) <= bound:
                    bound.add(lhs)
                    changed = True
    return bound


def check_safety(rule: Rule) -> Optional[SafetyViolation]:
    """Return ``None`` for a safe rule, otherwise the first violation found."""
    glob = rule.global_variables()
    bound = bound_variables(rule)
    for v in _ordered_variables(rule):
        if v in glob and v not in bound:
            return SafetyViolation(v, GLOBAL_CONDITION)
    for agg in rule.aggregates:
        if not isinstance(agg.set, SymbolicSet):
            continue
        in_conj = set()
        for a in agg.set.conj:
            in_conj |= a.variables()
        for t in agg.set.terms:
            if isinstance(t, Var) and t not in glob and t not in in_conj:
                return SafetyViolation(t, LOCAL_CONDITION)
    return None


def check_program_safety(program: Program) -> None:
    for r in program.rules:
        v = check_safety(r)
        if v is not None:
            raise UnsafeRuleError(r, v)


def classify_aggregate_schema(fn: str, cmp: str) -> MonotonicityClass:
    """Table-level character of ``#fn{...} cmp k`` assuming non-negative weights."""
    up = cmp in (">", ">=")
    if fn in ("count", "sum", "times"):
        return MONO if up else ANTI
    if fn == "max":
        return MONO if up else NONMONO
    if fn == "min":
        return NONMONO if up else MONO
    return NONMONO


def classify_monotonicity(lit) -> MonotonicityClass:
    """Monotonicity of a ground literal.

    Aggregates are classified from the weights actually present in their
    ground set: ``#sum`` needs every weight in N, ``#times`` every weight in
    N+, otherwise the literal is nonmonotone.
    """
    if isinstance(lit, Literal):
        return MONO if lit.positive else ANTI
    if not isinstance(lit, Aggregate):
        raise TypeError(f"cannot classify {lit!r}")
    if not isinstance(lit.set, GroundSet):
        return classify_aggregate_schema(lit.fn, lit.cmp)
    weights = [consts[0] for consts, _ in lit.set.elements]
    ints = all(isinstance(w, int) for w in weights)
    if lit.fn == "sum" and not (ints and all(w >= 0 for w in weights)):
        return NONMONO
    if lit.fn == "times" and not (ints and all(w >= 1 for w in weights)):
        return NONMONO
    return classify_aggregate_schema(lit.fn, lit.cmp)


def dependency_graph(program: Program) -> nx.DiGraph:
    """Head-to-body predicate graph; edge attribute ``strict`` marks antimonotone use."""
    g = nx.DiGraph()
    for r in program.rules:
        a = r.head.pred
        g.add_node(a)
        for item in r.body:
            if isinstance(item, Comparison):
                continue
            if isinstance(item, Literal):
                preds = [item.atom.pred]
                strict = not item.positive
            else:
                strict = classify_monotonicity(item) is not MONO
                atoms = item.set.conj if isinstance(item.set, SymbolicSet) else item.set.atoms()
                preds = [x.pred for x in atoms]
            for b in preds:
                g.add_node(b)
                if g.has_edge(a, b):
                    g[a][b]["strict"] = g[a][b]["strict"] or strict
                else:
                    g.add_edge(a, b, strict=strict)
    return g


def check_stratified(program: Program) -> Optional[Dict[str, int]]:
    """Level mapping (predicate name -> level) or ``None`` if unstratified.

    Predicates are identified by name.  Nonmonotone aggregates are treated
    like antimonotone ones, which is conservative.
    """
    g = dependency_graph(program)
    cond = nx.condensation(g)
    members = cond.graph["mapping"]
    for a, b, data in g.edges(data=True):
        if data["strict"] and members[a] == members[b]:
            return None
    level: Dict[int, int] = {}
    for c in reversed(list(nx.topological_sort(cond))):
        lvl = 0
        for a in cond.nodes[c]["members"]:
            for b in g.successors(a):
                cb = members[b]
                if cb == c:
                    continue
                lvl = max(lvl, level[cb] + (1 if g[a][b]["strict"] else 0))
        level[c] = lvl
    return {a: level[members[a]] for a in sorted(g.nodes)}
