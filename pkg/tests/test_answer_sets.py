import random

import pytest
from hypothesis import given, settings, strategies as st

from programs import COUNT_NEGATIVE_LOOP, COUNT_POSITIVE_LOOP, SUM_CHAIN, atoms, prog
from wfagg.answer_sets import (
    SizeGuardError,
    answer_set_report,
    enumerate_answer_sets,
    is_answer_set,
    is_answer_set_by_reduct,
    reduct,
    total_model_is_unfounded,
)
from wfagg.engine import gus, w_p, well_founded_model
from wfagg.evaluation import InconsistentInterpretationError, Interpretation, NonMonotoneAggregateError, is_model
from wfagg.generators import GroundProgramConfig, random_ground_program
from wfagg.grounder import ground

CFG = GroundProgramConfig(max_atoms=5, max_rules=6, aggregate_prob=0.35)


def _ground(text):
    return ground(prog(text))


def _total(p, true=""):
    return Interpretation.total(atoms(true), p.atoms())


class TestReduct:
    def test_positive_loop_kept(self):
        p4 = _ground(COUNT_POSITIVE_LOOP)
        assert reduct(p4, _total(p4, "p(0)")) == p4

    def test_positive_loop_dropped(self):
        p4 = _ground(COUNT_POSITIVE_LOOP)
        assert reduct(p4, _total(p4)).rules == ()

    def test_negative_loop_kept(self):
        p5 = _ground(COUNT_NEGATIVE_LOOP)
        assert reduct(p5, _total(p5)) == p5


class TestAnswerSets:
    def test_positive_loop(self):
        p4 = _ground(COUNT_POSITIVE_LOOP)
        assert is_answer_set(p4, _total(p4))
        assert not is_answer_set(p4, _total(p4, "p(0)"))
        assert is_answer_set_by_reduct(p4, _total(p4))
        assert not is_answer_set_by_reduct(p4, _total(p4, "p(0)"))

    def test_negative_loop(self):
        p5 = _ground(COUNT_NEGATIVE_LOOP)
        for m in (_total(p5), _total(p5, "p(0)")):
            assert not is_answer_set(p5, m)
            assert not is_answer_set_by_reduct(p5, m)

    def test_enumerate(self):
        p4 = _ground(COUNT_POSITIVE_LOOP)
        assert enumerate_answer_sets(p4) == [_total(p4)]
        assert enumerate_answer_sets(_ground(COUNT_NEGATIVE_LOOP)) == []

    def test_total_wfm_is_the_answer_set(self):
        p3 = prog(SUM_CHAIN)
        assert enumerate_answer_sets(p3) == [well_founded_model(p3).model]

    def test_canonical_order(self):
        p = prog("a :- not b. b :- not a. c :- not d. d :- not c.")
        found = enumerate_answer_sets(p)
        assert [sorted(map(str, m.true)) for m in found] == [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]]

    def test_report(self):
        p4 = _ground(COUNT_POSITIVE_LOOP)
        r = answer_set_report(p4, _total(p4, "p(0)"))
        assert r.model and not r.unfounded_free and not r.answer_set

    def test_partial_rejected(self):
        with pytest.raises(ValueError, match="not total"):
            is_answer_set(prog("a :- not b."), Interpretation(atoms("a")))

    def test_size_guard(self):
        p = prog(" ".join(f"p{k}." for k in range(25)))
        with pytest.raises(SizeGuardError):
            enumerate_answer_sets(p)
        with pytest.raises(SizeGuardError):
            is_answer_set_by_reduct(p, Interpretation.total(p.atoms(), p.atoms()), cap=10)

    def test_nonmonotone_rejected(self):
        p = prog("a :- #avg{<1 : a>} >= 1.")
        with pytest.raises(NonMonotoneAggregateError):
            is_answer_set(p, Interpretation.total((), p.atoms()))

    def test_reduct_check_handles_any_aggregate(self):
        p = prog("a :- #avg{<1 : a>, <3 : b>} >= 2. b.")
        assert is_answer_set_by_reduct(p, Interpretation.total(atoms("a, b"), p.atoms()))
        assert not is_answer_set_by_reduct(p, Interpretation.total(atoms("b"), p.atoms()))


def _all_totals(p):
    base = sorted(p.atoms(), key=lambda a: a.sort_key())
    for mask in range(2 ** len(base)):
        yield Interpretation.total((a for k, a in enumerate(base) if mask >> k & 1), base)


def _fixpoint_of_w(p, m):
    try:
        return w_p(p, m) == m
    except InconsistentInterpretationError:
        return False


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_characterizations_agree(seed):
    p = random_ground_program(random.Random(seed), CFG)
    wfm = well_founded_model(p).model
    for m in _all_totals(p):
        by_gus = is_answer_set(p, m)
        assert by_gus == is_answer_set_by_reduct(p, m)
        assert by_gus == _fixpoint_of_w(p, m)
        assert by_gus == (is_model(m, p) and gus(p, m).isdisjoint(m.true))
        assert is_model(m, p) == total_model_is_unfounded(p, m)
        if by_gus:
            assert wfm.issubset(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_operator_stays_inside_answer_sets(seed):
    rng = random.Random(seed)
    p = random_ground_program(rng, CFG)
    for m in enumerate_answer_sets(p):
        i = Interpretation(frozenset(a for a in m.true if rng.random() < 0.5),
                           frozenset(a for a in m.false if rng.random() < 0.5))
        assert w_p(p, i).issubset(m)
