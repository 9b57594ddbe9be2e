import pytest
from hypothesis import given, settings, strategies as st

from defdesc.calculus import Calc, Rule, Sequent
from defdesc.corpus import EX, F, G, entry, russell, desc, si1_from
from defdesc.kernel import ProofNode, check_proof
from defdesc.search import Branch, Exhausted, SearchBudget, countermodel_hint, prove
from defdesc.syntax import And, E, Exists, Imp, Not, Or, Param, Pred, Var

a, c = Param("a"), Param("c")
P = lambda t: Pred("P", (t,))
Q = lambda t: Pred("Q", (t,))
K = Calc.GPFL_EQ_I


def test_axiom():
    p = prove(Sequent([P(a)], [P(a)]), K)
    assert isinstance(p, ProofNode) and p.tag == Rule.Ax


def test_si2_instance():
    goal = Sequent([desc(F, G), desc(F, EX)], [russell(F, G)])
    p = prove(goal, K, SearchBudget(max_depth=20))
    assert isinstance(p, ProofNode) and p.conclusion == goal
    assert check_proof(p, K).valid


def test_si1_instance():
    goal = si1_from().conclusion
    p = prove(goal, K, SearchBudget(max_depth=20))
    assert check_proof(p, K).valid and p.conclusion == goal


def test_existence_has_no_right_rule():
    goal = Sequent([], [E(c)])
    for depth in (0, 5, 20):
        r = prove(goal, Calc.GPFL_EQ, SearchBudget(max_depth=depth))
        assert isinstance(r, Exhausted)
    assert countermodel_hint(goal, Calc.GPFL_EQ) == Branch((), (E(c),), True)


def test_hint_atoms():
    hint = countermodel_hint(Sequent([P(a)], [Q(a)]))
    assert str(hint) == "{P(a) left, Q(a) right}"


def test_hint_none_when_provable():
    assert countermodel_hint(Sequent([P(a)], [P(a)])) is None


def test_description_without_existence_is_not_found():
    # recorded outcome only; this says nothing about provability
    goal = Sequent([desc(F, G)], [Exists(And(P(Var(0)), Q(Var(0))))])
    r = prove(goal, K, SearchBudget(max_depth=4))
    assert isinstance(r, Exhausted)
    assert r.branch is not None and r.to_json()["frontier"] == r.frontier


@pytest.mark.parametrize("ident", ["neg-russell-equiv", "classical-russell-equiv"])
def test_russell_equivalences(ident):
    e = entry(ident)
    p = prove(e.end_sequent, e.calc, SearchBudget(max_depth=24))
    assert isinstance(p, ProofNode) and check_proof(p, e.calc).valid


def test_deterministic():
    goal = Sequent([desc(F, G), desc(F, EX)], [russell(F, G)])
    assert prove(goal, K).same_tree(prove(goal, K))


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_depth=-1)


_atoms = st.sampled_from([P(a), Q(a), P(c), E(a)])
_props = st.recursive(_atoms, lambda k: st.one_of(
    st.builds(Not, k), st.builds(And, k, k), st.builds(Or, k, k), st.builds(Imp, k, k)),
    max_leaves=5)
_goals = st.builds(lambda l, r: Sequent(l, r), st.lists(_props, max_size=2),
                   st.lists(_props, max_size=2))


@settings(max_examples=40, deadline=None)
@given(_goals, st.integers(0, 3), st.integers(0, 2))
def test_found_proofs_are_sound_and_monotone(goal, depth, extra):
    small = SearchBudget(max_depth=depth, max_contractions_per_formula=1, max_witness_terms=0)
    big = SearchBudget(max_depth=depth + extra, max_contractions_per_formula=1 + extra,
                       max_witness_terms=extra)
    r = prove(goal, K, small)
    if isinstance(r, ProofNode):
        assert check_proof(r, K).valid and r.conclusion == goal
        assert isinstance(prove(goal, K, big), ProofNode)
