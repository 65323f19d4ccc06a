"""Rewriting aggregate programs into aggregate-free ones.

Two translations are provided.

``compile_program``
    The monotone/antimonotone encoding of ``#count``, ``#sum`` and ``#times``
    literals.  Each aggregate gets an auxiliary predicate accumulating the
    aggregate value along chains of set elements in increasing order, and
    guard predicates reading off the comparison.  Aggregates with global
    variables additionally get a group-by predicate which collects the
    possible substitutions of those variables.  The group-by is defined over
    a positive relaxation of the program, so it is two-valued and never makes
    a guard undefined on its own.

``trm_program``
    Replaces each ground aggregate by the disjunction of the subset-minimal
    partial interpretations making it true.  Exponential, so only meant as a
    reference at small scale.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .analysis import classify_monotonicity
from .evaluation import TRUE, partial_truth
from .syntax import (
    BOTTOM,
    Aggregate,
    Atom,
    BinOp,
    Comparison,
    GroundSet,
    Literal,
    MonotonicityClass,
    Program,
    Rule,
    SymbolicSet,
    Var,
    sort_atoms,
)

COMPILABLE = ("count", "sum", "times")
INITIAL = {"count": 0, "sum": 0, "times": 1}


class CompilationError(ValueError):
    pass


@dataclass
class CompilationContext:
    """Fresh-name allocation for one compiled program."""

    reserved: Set[str]
    counter: int = 0
    domains: Dict[str, str] = field(default_factory=dict)

    def fresh_prefix(self) -> str:
        while True:
            self.counter += 1
            prefix = f"__mae_{self.counter}"
            if not any(p.startswith(prefix + "_") for p in self.reserved):
                return prefix

    def fresh_variables(self, taken: Set[str], stem: str, n: int) -> List[Var]:
        out = []
        k = 0
        while len(out) < n:
            k += 1
            name = f"{stem}{k}"
            if name not in taken:
                taken.add(name)
                out.append(Var(name))
        return out


def _primed(v: Var, taken: Set[str]) -> Var:
    name = v.name + "'"
    while name in taken:
        name += "'"
    taken.add(name)
    return Var(name)


def _check_weights(agg: Aggregate) -> None:
    if agg.fn not in COMPILABLE:
        raise CompilationError(f"cannot compile #{agg.fn}: only {', '.join('#' + f for f in COMPILABLE)} are supported")
    if isinstance(agg.guard, str):
        raise CompilationError(f"guard of `{agg}` must be an integer or a variable")
    if agg.fn == "count":
        return
    low = 0 if agg.fn == "sum" else 1
    if isinstance(agg.set, GroundSet):
        weights = [consts[0] for consts, _ in agg.set.elements]
    else:
        weights = [agg.set.terms[0]]
    for w in weights:
        if isinstance(w, Var):
            continue
        if not isinstance(w, int) or w < low:
            raise CompilationError(f"weight {w} of `{agg}` is outside the domain of #{agg.fn} (integers >= {low})")


def _as_symbolic(agg: Aggregate) -> List[SymbolicSet]:
    """A ground set is compiled as the union of its elements, each a set term without variables."""
    if isinstance(agg.set, SymbolicSet):
        return [agg.set]
    return [SymbolicSet(consts, conj) for consts, conj in agg.set.sorted_elements()]


def _is_certain(program: Program) -> Set[str]:
    """Predicates defined only by positive, aggregate-free rules over such predicates."""
    rules_by_pred: Dict[str, List[Rule]] = {}
    for r in program.rules:
        rules_by_pred.setdefault(r.head.pred, []).append(r)
    certain = {name for name, _ in program.predicates()}
    changed = True
    while changed:
        changed = False
        for p in list(certain):
            for r in rules_by_pred.get(p, ()):
                if r.negative_body or r.aggregates or any(a.pred not in certain for a in r.positive_body):
                    certain.discard(p)
                    changed = True
                    break
    return certain


class _Compiler:
    def __init__(self, program: Program):
        self.program = program
        self.ctx = CompilationContext(reserved={name for name, _ in program.predicates()})
        self.certain = _is_certain(program)
        self.extra: List[Rule] = []
        self.need_domain: Set[str] = set()

    def domain_atom(self, a: Atom) -> Atom:
        if a.pred in self.certain:
            return a
        self.need_domain.add(a.pred)
        return Atom(self._domain_name(a.pred), a.args)

    def _domain_name(self, pred: str) -> str:
        name = self.ctx.domains.get(pred)
        if name is None:
            name = "__dom_" + pred
            while name in self.ctx.reserved:
                name = "_" + name
            self.ctx.reserved.add(name)
            self.ctx.domains[pred] = name
        return name

    def domain_rules(self) -> List[Rule]:
        """Positive relaxation of every rule whose head predicate needs a domain."""
        out: List[Rule] = []
        done: Set[str] = set()
        todo = sorted(self.need_domain)
        while todo:
            p = todo.pop()
            if p in done:
                continue
            done.add(p)
            for r in self.program.rules:
                if r.head.pred != p:
                    continue
                body = [Literal(self.domain_atom(a)) for a in r.positive_body] + list(r.builtins)
                out.append(Rule(Atom(self._domain_name(p), r.head.args), tuple(body)))
            todo.extend(sorted(self.need_domain - done))
        return out

    def compile_rule(self, r: Rule) -> Rule:
        body = []
        for item in r.body:
            if isinstance(item, Aggregate):
                body.append(Literal(self.compile_aggregate(item, r)))
            else:
                body.append(item)
        return Rule(r.head, tuple(body))

    def compile_aggregate(self, agg: Aggregate, r: Rule) -> Atom:
        _check_weights(agg)
        prefix = self.ctx.fresh_prefix()
        names = {k: f"{prefix}_{k}" for k in ("aux", "gb", "ge", "gt", "le", "lt")}
        self.ctx.reserved.update(names.values())

        glob = r.global_variables()
        set_vars = set()
        for s in _as_symbolic(agg):
            set_vars |= s.variables()
        g_set = sorted((v for v in set_vars if v in glob), key=lambda v: v.name)
        g_all = list(g_set)
        if isinstance(agg.guard, Var) and agg.guard not in g_all:
            g_all.append(agg.guard)
        taken = {v.name for v in r.variables()}
        sets = _as_symbolic(agg)
        width = len(sets[0].terms) if sets else 1

        rules: List[Rule] = []
        gb_lit: Tuple = ()
        if g_all:
            gb = Atom(names["gb"], tuple(g_all))
            gb_body = [Literal(self.domain_atom(a)) for a in r.positive_body] + list(r.builtins)
            rules.append(Rule(gb, tuple(gb_body)))
            gb_lit = (Literal(gb),)

        bottom = tuple([BOTTOM] * width)
        base_head = Atom(names["aux"], tuple(g_set) + bottom + (INITIAL[agg.fn],))
        rules.append(Rule(base_head, gb_lit))

        prev = self.ctx.fresh_variables(taken, "MaeY", width)
        acc, new = self.ctx.fresh_variables(taken, "MaeS", 2)
        for s in sets:
            local = sorted((v for v in s.variables() if v not in glob), key=lambda v: v.name)
            ren = {v: _primed(v, set(taken) | {x.name for x in local}) for v in local}
            cur = tuple(ren.get(t, t) if isinstance(t, Var) else t for t in s.terms)
            conj = tuple(Literal(a.substitute(ren)) for a in s.conj)
            if agg.fn == "count":
                beta = BinOp("+", acc, 1)
            elif agg.fn == "sum":
                beta = BinOp("+", acc, cur[0])
            else:
                beta = BinOp("*", acc, cur[0])
            # lexicographic prev < cur: equal on a prefix, smaller at position j
            for j in range(width):
                before = tuple(cur[:j]) + tuple(prev[j:])
                step_body = (Literal(Atom(names["aux"], tuple(g_set) + before + (acc,))),) + conj + (
                    Comparison("<", prev[j], cur[j]),
                    Comparison("=", new, beta),
                )
                rules.append(Rule(Atom(names["aux"], tuple(g_set) + cur + (new,)), step_body))

        probe = Literal(Atom(names["aux"], tuple(g_set) + tuple(prev) + (acc,)))
        head_args = tuple(g_all)
        guard_rules = {
            "ge": Rule(Atom(names["ge"], head_args), gb_lit + (probe, Comparison(">=", acc, agg.guard))),
            "gt": Rule(Atom(names["gt"], head_args), gb_lit + (probe, Comparison(">", acc, agg.guard))),
        }
        if agg.cmp == ">=":
            rules.append(guard_rules["ge"])
            result = guard_rules["ge"].head
        elif agg.cmp == ">":
            rules.append(guard_rules["gt"])
            result = guard_rules["gt"].head
        elif agg.cmp == "<=":
            rules.append(guard_rules["gt"])
            result = Atom(names["le"], head_args)
            rules.append(Rule(result, gb_lit + (Literal(guard_rules["gt"].head, False),)))
        else:
            rules.append(guard_rules["ge"])
            result = Atom(names["lt"], head_args)
            rules.append(Rule(result, gb_lit + (Literal(guard_rules["ge"].head, False),)))
        self.extra.extend(rules)
        return result


def compile_aggregate(agg: Aggregate, rule: Rule, program: Optional[Program] = None) -> Tuple[List[Rule], Atom]:
    """Rules defining a replacement atom for ``agg`` occurring in ``rule``.

    ``program`` supplies the context used to name fresh predicates and to
    build domains for global variables; it defaults to the rule alone.
    """
    c = _Compiler(program if program is not None else Program((rule,)))
    atom = c.compile_aggregate(agg, rule)
    return c.extra + c.domain_rules(), atom


def compile_program(program: Program) -> Program:
    """Aggregate-free program equivalent to ``program`` on its own predicates."""
    if not program.has_aggregates():
        return program
    c = _Compiler(program)
    rules = [c.compile_rule(r) for r in program.rules]
    return Program(tuple(rules + c.extra + c.domain_rules()))


# -- minimal true-making interpretations -----------------------------------------


Conjunction = Tuple[Literal, ...]


def _holds_partial(agg: Aggregate, cls: MonotonicityClass, true: FrozenSet[Atom], false: FrozenSet[Atom]) -> bool:
    if cls is MonotonicityClass.NONMONOTONE:
        from .oracle import brute_eval_aggregate
        from .evaluation import Interpretation

        return brute_eval_aggregate(Interpretation(true, false), agg) is TRUE
    return partial_truth(agg, cls, true, false) is TRUE


def trm_translate(agg: Aggregate, max_atoms: int = 12) -> List[Conjunction]:
    """Conjunctions of the subset-minimal interpretations making ``agg`` true.

    An empty list means no interpretation does (the aggregate is
    unsatisfiable); a list holding the empty conjunction means it is always
    true.
    """
    if not isinstance(agg.set, GroundSet) or isinstance(agg.guard, Var):
        raise ValueError(f"aggregate is not ground: `{agg}`")
    atoms = sort_atoms(agg.set.atoms())
    if len(atoms) > max_atoms:
        raise ValueError(f"{len(atoms)} atoms in `{agg}` exceed the limit of {max_atoms}")
    cls = classify_monotonicity(agg)
    minimal: List[Tuple[FrozenSet[Atom], FrozenSet[Atom]]] = []
    # enumerating by interpretation size means every subset is seen before its supersets
    for size in range(len(atoms) + 1):
        for chosen in itertools.combinations(atoms, size):
            for signs in itertools.product((True, False), repeat=size):
                true = frozenset(a for a, s in zip(chosen, signs) if s)
                false = frozenset(a for a, s in zip(chosen, signs) if not s)
                if any(t <= true and f <= false for t, f in minimal):
                    continue
                if _holds_partial(agg, cls, true, false):
                    minimal.append((true, false))
    return [
        tuple(Literal(a) for a in sort_atoms(t)) + tuple(Literal(a, False) for a in sort_atoms(f))
        for t, f in minimal
    ]


def trm_program(program: Program, max_atoms: int = 12) -> Program:
    """Ground program with every aggregate replaced by its minimal conjunctions.

    A rule with several aggregates yields one rule per combination of
    conjuncts; a rule with an unsatisfiable aggregate is dropped.
    """
    out: List[Rule] = []
    for r in program.rules:
        aggs = r.aggregates
        if not aggs:
            out.append(r)
            continue
        standard = tuple(l for l in r.body if isinstance(l, Literal))
        options = [trm_translate(a, max_atoms) for a in aggs]
        for combo in itertools.product(*options):
            body: List[Literal] = list(standard)
            for conj in combo:
                for l in conj:
                    if l not in body:
                        body.append(l)
            out.append(Rule(r.head, tuple(body)))
    return Program(tuple(out)).sorted()
