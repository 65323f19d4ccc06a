import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from programs import CHOICE_WITH_SUM, COUNT_SELF_SUPPORT, STRATIFIED_COUNT, SUM_CHAIN, atoms, interp, prog
from wfagg.analysis import check_stratified
from wfagg.engine import gus, is_unfounded_set, phi_fixpoint, phi_step, t_p, w_p, well_founded_model, wfs_sequence
from wfagg.evaluation import InconsistentInterpretationError, Interpretation, NonMonotoneAggregateError, is_model
from wfagg.generators import GroundProgramConfig, random_ground_program, random_interpretation, random_stratified_program
from wfagg.grounder import ground
from wfagg.oracle import alternating_fixpoint_wfm, brute_unfounded_sets, brute_wfm, van_gelder_unfounded

I4 = "a(1), a(2), a(3)"
AGG_CFG = GroundProgramConfig(max_atoms=5, max_rules=6, aggregate_prob=0.35)
PLAIN_CFG = GroundProgramConfig(max_atoms=6, max_rules=8)


class TestImmediateConsequence:
    def test_negation_fires(self):
        assert atoms("b") <= t_p(prog(SUM_CHAIN), interp("", "a(1), c"))

    def test_facts_only(self):
        assert t_p(prog("a. b :- c."), Interpretation()) == atoms("a")

    def test_chain_step(self):
        assert t_p(prog(SUM_CHAIN), interp("b", "a(1), c")) == atoms("b, a(2)")


class TestUnfoundedSets:
    def test_self_support(self):
        p = prog(COUNT_SELF_SUPPORT)
        assert is_unfounded_set(p, interp(I4), atoms("a(1)"))
        assert not is_unfounded_set(p, interp(I4), atoms("a(2)"))

    def test_empty_set(self):
        assert is_unfounded_set(prog(SUM_CHAIN), Interpretation(), set())

    def test_nonmonotone_rejected(self):
        with pytest.raises(NonMonotoneAggregateError):
            is_unfounded_set(prog("a :- #avg{<1 : a>} >= 1."), Interpretation(), set())


class TestPhi:
    def test_fact_only(self):
        assert phi_step(prog(COUNT_SELF_SUPPORT), interp(I4), set()) == atoms("a(2)")

    def test_fixpoint(self):
        p = prog(COUNT_SELF_SUPPORT)
        assert phi_step(p, interp(I4), atoms("a(2)")) == atoms("a(2)")
        assert phi_fixpoint(p, interp(I4)) == atoms("a(2)")

    def test_empty_program(self):
        assert phi_step(prog(""), Interpretation(), atoms("a")) == frozenset()


class TestGus:
    def test_self_support(self):
        assert gus(prog(COUNT_SELF_SUPPORT), interp(I4)) == atoms("a(1), a(3)")

    def test_empty_program(self):
        assert gus(prog(""), Interpretation(), base=atoms("a")) == atoms("a")


class TestWellFoundedOperator:
    def test_first_step(self):
        assert w_p(prog(SUM_CHAIN), Interpretation()) == interp("", "a(1), c")

    def test_third_step(self):
        assert w_p(prog(SUM_CHAIN), interp("b", "a(1), c")) == interp("b, a(2)", "a(1), c")

    def test_empty_program(self):
        assert w_p(prog(""), Interpretation(), base=atoms("a, b")) == interp("", "a, b")

    def test_inconsistency_reported(self):
        # off the canonical sequence: b is assumed although nothing supports it
        with pytest.raises(InconsistentInterpretationError):
            w_p(prog("a :- b."), interp("b"))


class TestWellFoundedModel:
    def test_sum_chain(self):
        steps = list(wfs_sequence(prog(SUM_CHAIN)))
        assert steps[:3] == [interp("", "a(1), c"), interp("b", "a(1), c"), interp("b, a(2)", "a(1), c")]
        w = well_founded_model(prog(SUM_CHAIN))
        assert w.model == interp("b, a(2)", "a(1), c") and w.total

    def test_stratified_with_facts(self):
        g = ground(prog(STRATIFIED_COUNT + "a(1,2). b(2)."))
        w = well_founded_model(g)
        assert w.total
        assert w.model == brute_wfm(g)

    def test_choice_program(self):
        g = ground(prog(CHOICE_WITH_SUM))
        w = well_founded_model(g)
        assert w.true == frozenset()
        assert w.undefined == atoms("q(1), q(2), p(2,1), p(2,2), t(2)")
        assert w.false == atoms("p(1,1), p(1,2), t(1)")
        assert w.model == brute_wfm(g)

    def test_iteration_bound(self):
        w = well_founded_model(prog(SUM_CHAIN))
        assert w.iterations <= len(w.base) + 1

    def test_nonmonotone_rejected_with_literal(self):
        with pytest.raises(NonMonotoneAggregateError) as e:
            well_founded_model(prog("a :- #sum{<1 : b>, <-2 : c>} > 0. b."))
        assert "#sum" in str(e.value)


def _seeds():
    return st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(_seeds())
def test_unfounded_sets_closed_under_union(seed):
    rng = random.Random(seed)
    p = random_ground_program(rng, AGG_CFG)
    i = random_interpretation(rng, sorted(p.atoms(), key=lambda a: a.sort_key()))
    family = brute_unfounded_sets(p, i)
    for x, y in itertools.combinations(family, 2):
        assert is_unfounded_set(p, i, x | y)
    union = frozenset().union(*family)
    assert gus(p, i) == union


@settings(max_examples=60, deadline=None)
@given(_seeds())
def test_gus_and_wp_monotone(seed):
    rng = random.Random(seed)
    p = random_ground_program(rng, AGG_CFG)
    base = sorted(p.atoms(), key=lambda a: a.sort_key())
    j = random_interpretation(rng, base)
    i = Interpretation(frozenset(a for a in j.true if rng.random() < 0.5),
                       frozenset(a for a in j.false if rng.random() < 0.5))
    assert gus(p, i) <= gus(p, j)
    try:
        wi, wj = w_p(p, i), w_p(p, j)
    except InconsistentInterpretationError:
        return
    assert wi.issubset(wj)


@settings(max_examples=60, deadline=None)
@given(_seeds())
def test_fixpoint_is_model_and_matches_oracle(seed):
    rng = random.Random(seed)
    p = random_ground_program(rng, AGG_CFG)
    w = well_founded_model(p)
    assert w_p(p, w.model) == w.model
    assert is_model(w.model, p)
    assert w.model == brute_wfm(p)


@settings(max_examples=60, deadline=None)
@given(_seeds())
def test_aggregate_free_coincides_with_classical(seed):
    rng = random.Random(seed)
    p = random_ground_program(rng, PLAIN_CFG)
    i = random_interpretation(rng, sorted(p.atoms(), key=lambda a: a.sort_key()))
    base = sorted(p.atoms(), key=lambda a: a.sort_key())
    for k in range(len(base) + 1):
        for x in itertools.combinations(base, k):
            assert is_unfounded_set(p, i, x) == van_gelder_unfounded(p, i, x)
    assert well_founded_model(p).model == alternating_fixpoint_wfm(p)


@settings(max_examples=60, deadline=None)
@given(_seeds())
def test_stratified_programs_are_total(seed):
    p = random_stratified_program(random.Random(seed))
    assert check_stratified(p) is not None
    assert well_founded_model(p).total
