import pytest

from defdesc.calculus import Sequent
from defdesc.corpus import (
    EX, F, G, build_corpus, close_hypotheses, desc, russell, si1_from,
    theorem1_rule_from_sequents,
)
from defdesc.kernel import check_proof
from defdesc.search import SearchBudget, prove
from defdesc.syntax import And, Desc, E, Eq, Exists, Forall, Imp, Param, Pred, Signature, Var

a = Param("a")
P, Q = (lambda t: Pred("P", (t,))), (lambda t: Pred("Q", (t,)))
x, y = Var(0), Var(1)

IDS = ["mp-bicond-left", "mp-bicond-right", "bicond-rules-derived", "bicond-rules-derived-left",
       "thm1-ai", "thm1-aii", "thm1-b", "thm1-c", "thm1-c-li3", "thm1-d",
       "exists-bridge-fwd", "exists-bridge-bwd", "neg-russell-equiv", "classical-russell-equiv"]
CORPUS = {e.id: e for e in build_corpus()}
TEMPLATES = [i for i, e in CORPUS.items() if e.hypotheses]


def test_ids():
    assert list(CORPUS) == IDS


@pytest.mark.parametrize("ident", IDS)
def test_entry_valid(ident):
    e = CORPUS[ident]
    assert check_proof(e.proof, e.calc).valid
    assert e.source


def test_mp_bicond_left_end_sequent():
    bic = And(Imp(P(a), Q(a)), Imp(Q(a), P(a)))
    assert CORPUS["mp-bicond-left"].end_sequent == Sequent([bic, P(a)], [Q(a)])


def test_thm1_d_end_sequent():
    PQ, PE = Desc(P(x), Q(x)), Desc(P(x), E(x))
    # Ey (Ax (P(x) <-> x=y) & Q(y)), with y outermost
    inner = And(Imp(P(x), Eq(x, y)), Imp(Eq(x, y), P(x)))
    rus = Exists(And(Forall(inner), Q(x)))
    assert CORPUS["thm1-d"].end_sequent == Sequent([PQ, PE], [rus])
    assert rus == russell(F, G)


def test_bridge_end_sequent():
    some = Exists(Desc(P(x), Eq(x, y)), "y")
    assert CORPUS["exists-bridge-fwd"].end_sequent == Sequent([some], [Desc(P(x), E(x))])


def test_template_hypotheses():
    ai = theorem1_rule_from_sequents("a.i")
    assert len(ai.hypotheses) == 5
    assert si1_from().conclusion in ai.hypotheses
    b = theorem1_rule_from_sequents("b")
    assert russell_si2() in b.hypotheses
    assert si1_from(EX).conclusion in b.hypotheses
    assert len(b.hypotheses) >= 6
    with pytest.raises(ValueError):
        theorem1_rule_from_sequents("z")


def russell_si2():
    return Sequent([desc(F, G), desc(F, EX)], [russell(F, G)])


def test_closed_entries_have_no_hypotheses():
    for i in set(IDS) - set(TEMPLATES):
        assert check_proof(CORPUS[i].proof, CORPUS[i].calc).closed


@pytest.mark.parametrize("ident", TEMPLATES)
def test_templates_close_under_axioms(ident):
    e = CORPUS[ident]
    q = close_hypotheses(e.proof)
    r = check_proof(q, e.calc)
    assert r.valid and r.closed


@pytest.mark.parametrize("ident", TEMPLATES)
def test_templates_close_with_lemmas(ident, russell_lemmas):
    e = CORPUS[ident]
    r = check_proof(close_hypotheses(e.proof, known=russell_lemmas), e.calc)
    assert r.valid and r.closed


def test_close_rejects_clash():
    e = CORPUS["thm1-ai"]
    eig = next(a for n in e.proof for a in n.rule.eigen)
    with pytest.raises(ValueError):
        close_hypotheses(e.proof, X=Pred("P", (eig,)))


def test_signature_needs_unary_predicates():
    with pytest.raises(ValueError):
        build_corpus(Signature(predicates={"P": 2, "Q": 1}))


def test_exercise_entry_confirmed_by_search():
    # the other exercise entries are templates; their closures are checked above
    e = CORPUS["exists-bridge-bwd"]
    found = prove(e.end_sequent, e.calc, SearchBudget(max_depth=20))
    assert found.conclusion == e.end_sequent
    assert check_proof(found, e.calc).valid
