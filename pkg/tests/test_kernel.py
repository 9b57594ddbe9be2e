from hypothesis import given, settings, strategies as st

from defdesc.calculus import Calc, ContextMismatch, Rule, RuleInstance, Sequent
from defdesc.corpus import build_corpus, entry
from defdesc.cutelim import rename_parameter
from defdesc.kernel import (
    ProofNode, ax, check_proof, cut, cut_degrees, height, proof_params, weaken,
)
from defdesc.randproof import CALC, random_proofs
from defdesc.syntax import And, Param, Pred, fresh_parameter

R = Rule
a, b = Param("a"), Param("b")
Pa, Qb = Pred("P", (a,)), Pred("Q", (b,))


def test_axiom_leaf():
    r = check_proof(ax(Pa), Calc.GPFL)
    assert r.valid and r.height == 1 and r.cut_count == 0 and r.max_cut_degree == 0
    assert height(ax(Pa)) == 1


def test_one_weakening():
    assert height(weaken(ax(Pa), [Qb])) == 2


def test_rand_with_different_contexts():
    left = weaken(ax(Pa), right=[Qb])          # P(a) => P(a), Q(b)
    right = ax(Pa)                               # P(a) => P(a)
    conj = And(Pa, Pa)
    bad = ProofNode(Sequent([Pa], [Qb, conj]), RuleInstance(R.RAnd, conj), (left, right))
    root = weaken(bad, [Qb])
    r = check_proof(root, Calc.GPFL)
    assert not r.valid
    assert [(path, type(e)) for path, e in r.errors] == [((0,), ContextMismatch)]
    assert "root.0" in str(r)


def test_mp_bicond_left_report():
    e = entry("mp-bicond-left")
    r = check_proof(e.proof, e.calc)
    assert r.valid and r.cut_count == 0


def test_thm1_aii_height():
    # recounted from the tree, independently of the kernel's height function
    def longest(p):
        return 1 + max((longest(q) for q in p.premises), default=0)
    p = entry("thm1-aii").proof
    assert height(p) == longest(p) == 11


def test_cut_degrees_examples():
    assert cut_degrees(ax(Pa)) == []
    assert cut_degrees(cut(ax(Pa), ax(Pa), Pa)) == [0]
    degs = sorted(cut_degrees(entry("thm1-b").proof))
    assert 1 in degs                                  # Ix[P, E!x]
    assert max(degs) == 6                             # the Russellian existential


def test_report_json_shape():
    r = check_proof(entry("thm1-ai").proof, Calc.GPFL_EQ_I)
    j = r.to_json()
    assert set(j) == {"valid", "closed", "height", "cut_count", "max_cut_degree", "errors",
                      "hypotheses"}
    assert j["valid"] and not j["closed"] and len(j["hypotheses"]) == 5


def test_max_cut_degree_matches():
    for e in build_corpus():
        r = check_proof(e.proof, e.calc)
        assert r.max_cut_degree == max(cut_degrees(e.proof), default=0)


def test_prefix_monotone_on_corpus():
    for e in build_corpus():
        for _, node in e.proof.walk():
            assert check_proof(node, e.calc).valid


_PROOFS = random_proofs(11, 30)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(_PROOFS), st.data())
def test_prefix_monotone_random(p, data):
    nodes = [n for _, n in p.walk()]
    sub = data.draw(st.sampled_from(nodes))
    assert check_proof(sub, CALC).valid


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(_PROOFS), st.data())
def test_fresh_renaming_preserves_validity_and_height(p, data):
    ps = sorted(proof_params(p), key=lambda q: q.name)
    src = data.draw(st.sampled_from(ps))
    dst = fresh_parameter(proof_params(p))
    q = rename_parameter(p, src, dst)
    r = check_proof(q, CALC)
    assert r.valid and r.height == height(p)
