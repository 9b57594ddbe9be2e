import random

import pytest
from hypothesis import given, strategies as st

from defdesc.calculus import (
    ADMITTED, ArityError, Calc, ContextMismatch, FreshnessUnavailable, Rule, RuleInstance,
    Sequent, StepError, admitted_rules, check_step, instantiate_schema,
)
from defdesc.cutelim import _subst_rule, _seq_replace
from defdesc.syntax import Desc, E, Eq, Param, Pred, Var

from mutants import CATALOGUE, EIGEN, calc_for, valid_instance

R = Rule
b, c = Param("b"), Param("c")
P = lambda t: Pred("P", (t,))
Q = lambda t: Pred("Q", (t,))


def test_admitted_examples():
    assert R.LI5 in admitted_rules(Calc.GPFL_EQ_I)
    assert R.LIN1 not in admitted_rules(Calc.GPFL_EQ_I)
    gc = admitted_rules(Calc.GC_EQ_I)
    assert {R.RIC, R.LIC1, R.LIC2, R.RAllC, R.LAllC, R.RExC, R.LExC} <= gc
    assert not gc & {R.LAll, R.RAll, R.LEx, R.REx, R.NEI, R.NEE, R.NEEf, R.RI}
    assert not {R.EqI, R.EqE} & admitted_rules(Calc.GPFL)


def test_admitted_table():
    gpfl_eq = admitted_rules(Calc.GPFL_EQ)
    assert gpfl_eq == admitted_rules(Calc.GPFL) | {R.EqI, R.EqE}
    assert admitted_rules(Calc.GPFL_EQ_I) - gpfl_eq == {R.RI, R.LI1, R.LI2, R.LI3, R.LI4, R.LI5}
    assert admitted_rules(Calc.GPFL_EQ_I_S) - gpfl_eq == {
        R.RI, R.RIS, R.LI1S, R.LI2SI, R.LI3, R.LI4SI, R.LI5S}
    gnfl = admitted_rules(Calc.GNFL_EQ)
    assert R.EqE not in gnfl and {R.NEI, R.NEE, R.NEEf, R.EqI} <= gnfl
    assert admitted_rules(Calc.GNFL_EQ_I) - gnfl == {R.RIN, R.LIN1, R.LIN2}
    assert all(R.LI2P not in rules for rules in ADMITTED.values())


def test_schema_axiom():
    concl, prems, ri = instantiate_schema(RuleInstance(R.Ax, P(Param("a"))))
    assert concl == Sequent([P(Param("a"))], [P(Param("a"))])
    assert prems == [] and ri.tag == R.Ax


def test_schema_ri_premises():
    x = Var(0)
    d = Desc(P(x), Q(x))
    a0 = Param("a0")
    concl, prems, _ = instantiate_schema(RuleInstance(R.RI, d, terms=(c,), eigen=(a0,)))
    assert concl == Sequent([], [d])
    assert prems == [
        Sequent([], [P(c)]), Sequent([], [Q(c)]), Sequent([], [E(c)]),
        Sequent([E(a0), P(a0)], [Eq(a0, c)]),
    ]


def test_schema_nei():
    gamma, delta = [P(b)], [Q(b)]
    concl, prems, _ = instantiate_schema(RuleInstance(R.NEI, E(c)), gamma, delta)
    assert concl == Sequent([E(c), P(b)], [Q(b)])
    assert prems == [Sequent([Eq(c, c), P(b)], [Q(b)])]


def test_schema_refuses_pinned_stale_eigen():
    ri = EIGEN["RAll"]
    with pytest.raises(FreshnessUnavailable):
        instantiate_schema(ri, [P(ri.eigen[0])])


def test_rall_eigen_in_context():
    ri = EIGEN["RAll"]
    a = ri.eigen[0]
    concl = Sequent([Q(a)], [ri.main])
    with pytest.raises(StepError) as exc:
        check_step(concl, ri, [Sequent([E(a), Q(a)], [P(a)])], Calc.GPFL)
    assert type(exc.value).__name__ == "EigenvariableViolation"


def test_wrong_premise_count():
    ri = CATALOGUE["RAnd"]
    concl, prems = valid_instance(ri)
    with pytest.raises(ArityError):
        check_step(concl, ri, prems[:1], Calc.GPFL)


def test_rand_context_mismatch():
    ri = CATALOGUE["RAnd"]
    concl, prems = valid_instance(ri)
    bad = [prems[0], Sequent(prems[1].ant, prems[1].suc + (P(c),))]
    with pytest.raises(ContextMismatch):
        check_step(concl, ri, bad, Calc.GPFL)


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_schema_round_trip(name):
    ri = CATALOGUE[name]
    ctx = ([Q(b), E(c)], [P(c)])
    concl, prems, _ = instantiate_schema(ri, *ctx)
    for calc in Calc:
        if ri.tag in ADMITTED[calc]:
            check_step(concl, ri, prems, calc)


def _shuffle(s: Sequent, rng: random.Random) -> Sequent:
    ant, suc = list(s.ant), list(s.suc)
    rng.shuffle(ant)
    rng.shuffle(suc)
    return Sequent(ant, suc)


@given(st.sampled_from(sorted(CATALOGUE)), st.randoms(use_true_random=False))
def test_multiset_insensitive(name, rng):
    ri = CATALOGUE[name]
    concl, prems, _ = instantiate_schema(ri, [Q(b), P(b), Q(b)], [P(c), E(b)])
    check_step(_shuffle(concl, rng), ri, [_shuffle(p, rng) for p in prems], calc_for(ri.tag))


@given(st.sampled_from(sorted(CATALOGUE)))
def test_renaming_stable(name):
    ri = CATALOGUE[name]
    concl, prems, _ = instantiate_schema(ri, [Q(b)], [P(c)])
    fresh = Param("z9")
    # b -> z9 is injective since z9 occurs nowhere
    moved = _subst_rule(ri, b, fresh)
    check_step(_seq_replace(concl, b, fresh), moved,
               [_seq_replace(p, b, fresh) for p in prems], calc_for(ri.tag))
