import pytest

from defdesc import derived as dv
from defdesc.calculus import Calc, Sequent
from defdesc.kernel import check_proof
from defdesc.syntax import Eq, Param, Pred, Template, Var

s, t, u = Param("s"), Param("t"), Param("u")
B = Template(Pred("P", (Var(0),)))


@pytest.mark.parametrize("proof, sequent", [
    (dv.basic_rewrite(s, t, B), Sequent([Eq(s, t), B(s)], [B(t)])),
    (dv.rewrite_back(s, t, B), Sequent([Eq(s, t), B(t)], [B(s)])),
    (dv.trans_chain(s, u, t), Sequent([Eq(s, u), Eq(u, t)], [Eq(s, t)])),
    (dv.trans_common(s, t, u), Sequent([Eq(s, u), Eq(t, u)], [Eq(s, t)])),
    (dv.symmetry(s, t), Sequent([Eq(s, t)], [Eq(t, s)])),
    (dv.reflexivity(t), Sequent([], [Eq(t, t)])),
], ids=["basic", "back", "chain", "common", "symmetry", "refl"])
def test_identity_lemmas(proof, sequent):
    assert proof.conclusion == sequent
    r = check_proof(proof, Calc.GPFL_EQ)
    assert r.valid and r.cut_count == 0


def test_rewrite_back_is_small():
    # the reductions rely on a four-node chain for this auxiliary sequent
    assert sum(1 for _ in dv.rewrite_back(s, t, B)) == 4


def test_fit_weakens_and_contracts():
    p = dv.fit(dv.symmetry(s, t), [Eq(s, t), Pred("Q", (u,))], [Eq(t, s)])
    assert check_proof(p, Calc.GPFL_EQ).valid
    assert p.conclusion == Sequent([Eq(s, t), Pred("Q", (u,))], [Eq(t, s)])
