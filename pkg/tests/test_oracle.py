import pytest

from programs import CHOICE_WITH_SUM, COUNT_SELF_SUPPORT, SUM_CHAIN, atoms, interp, prog
from wfagg.evaluation import FALSE, TRUE, UNDEFINED, Interpretation, eval_aggregate_total
from wfagg.grounder import ground
from wfagg.oracle import (
    OracleSizeError,
    alternating_fixpoint_wfm,
    brute_eval_aggregate,
    brute_unfounded_sets,
    brute_wfm,
    van_gelder_unfounded,
)
from wfagg.parser import parse_rule

I4 = "a(1), a(2), a(3)"


def test_unfounded_family_of_self_support():
    family = brute_unfounded_sets(prog(COUNT_SELF_SUPPORT), interp(I4))
    assert family == {frozenset(), atoms("a(1)"), atoms("a(3)"), atoms("a(1), a(3)")}


def test_unfounded_family_of_empty_program():
    assert brute_unfounded_sets(prog(""), Interpretation(), base=atoms("a")) == {frozenset(), atoms("a")}


class TestBruteAggregate:
    def test_partial_sum(self):
        agg = parse_rule("z :- #sum{<1 : p(2,1)>, <2 : p(2,2)>} > 1.").aggregates[0]
        assert brute_eval_aggregate(interp("p(2,2)"), agg) is TRUE

    def test_nonmonotone_undefined(self):
        agg = parse_rule("z :- #sum{<1 : a>, <-1 : b>} >= 1.").aggregates[0]
        assert brute_eval_aggregate(Interpretation(), agg) is UNDEFINED

    def test_total_matches_direct(self):
        agg = parse_rule("z :- #avg{<1 : a>, <4 : b>} >= 2.").aggregates[0]
        for i in (interp("a", "b"), interp("a, b"), interp("b", "a"), interp("", "a, b")):
            assert brute_eval_aggregate(i, agg) is eval_aggregate_total(i, agg)

    def test_size_guard(self):
        elems = ", ".join(f"<{k} : p{k}>" for k in range(6))
        agg = parse_rule(f"z :- #count{{{elems}}} > 1.").aggregates[0]
        with pytest.raises(OracleSizeError):
            brute_eval_aggregate(Interpretation(), agg, cap=5)


class TestVanGelder:
    def test_empty_set(self):
        assert van_gelder_unfounded(prog("a :- not b. b :- not a."), Interpretation(), set())

    def test_fact_head(self):
        assert not van_gelder_unfounded(prog("a. b :- a."), Interpretation(), atoms("a"))

    def test_positive_loop(self):
        assert van_gelder_unfounded(prog("a :- b. b :- a."), Interpretation(), atoms("a, b"))

    def test_rejects_aggregates(self):
        with pytest.raises(ValueError):
            van_gelder_unfounded(prog(SUM_CHAIN), Interpretation(), set())


class TestBruteWfm:
    def test_sum_chain(self):
        assert brute_wfm(prog(SUM_CHAIN)) == interp("b, a(2)", "a(1), c")

    def test_choice_program(self):
        g = ground(prog(CHOICE_WITH_SUM))
        w = brute_wfm(g)
        assert w.true == frozenset()
        # t(1) depends on p(1,1) and p(1,2), which have no rules
        assert w.false == atoms("p(1,1), p(1,2), t(1)")

    def test_empty_program(self):
        assert brute_wfm(prog(""), base=atoms("a, b")) == interp("", "a, b")

    def test_size_guard(self):
        text = " ".join(f"p{k}." for k in range(20))
        with pytest.raises(OracleSizeError):
            brute_wfm(prog(text))


def test_alternating_fixpoint_textbook():
    p = prog("a :- not b. b :- not a. c :- not c. d. e :- d, not f.")
    assert alternating_fixpoint_wfm(p) == Interpretation(atoms("d, e"), atoms("f"))
