import pytest
from hypothesis import given, settings, strategies as st

from defdesc.calculus import Calc, Sequent
from defdesc.corpus import build_corpus
from defdesc.randproof import CALC, random_proofs
from defdesc.script import (
    ArityError, ParseError, parse_formula, parse_script, parse_sequent, parse_signature,
    print_formula, print_script, script_for,
)
from defdesc.syntax import And, Const, Desc, E, Func, Imp, Param, Pred, Signature, Var, iff

SIG = parse_signature("(pred P 1) (pred Q 1) (pred R 2) (fun f 1) (const k)")
a0 = Param("a0")


def test_sequent_example():
    s = parse_sequent("(seq ((P a0)) ((P a0)))", SIG)
    assert s == Sequent([Pred("P", (a0,))], [Pred("P", (a0,))])


def test_description_example():
    f = parse_formula("(I x (P x) (ex! x))", SIG)
    assert f == Desc(Pred("P", (Var(0),)), E(Var(0)))


def test_iff_desugars():
    A, B = Pred("P", (a0,)), Pred("Q", (a0,))
    assert parse_formula("(iff (P a0) (Q a0))", SIG) == And(Imp(A, B), Imp(B, A)) == iff(A, B)


def test_terms():
    f = parse_formula("(R (f k) b)", SIG)
    assert f == Pred("R", (Func("f", (Const("k"),)), Param("b")))


def test_nested_binders_resolve_innermost():
    f = parse_formula("(forall x (exists y (R x y)))", SIG)
    assert print_formula(f, SIG) == "(forall x (exists y (R x y)))"
    g = parse_formula("(forall x (forall x (P x)))", SIG)
    # the inner x shadows the outer one
    assert g.body.body == Pred("P", (Var(0),))


@pytest.mark.parametrize("text, line, col", [
    ("(seq ((P a0))\n  ((Z a0)))", 2, 5),
    ("(seq ((P a0)) ((P a0))", 1, 1),
    ("(seq ((P a0)) ((P a0))))", 1, 24),
])
def test_positioned_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_sequent(text, SIG)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_arity_error():
    with pytest.raises(ArityError) as exc:
        parse_formula("(P a0 a1)", SIG)
    assert (exc.value.line, exc.value.col) == (1, 1)
    assert "P" in exc.value.message


def test_unknown_function_rejected():
    with pytest.raises(ParseError):
        parse_formula("(P (g a0))", SIG)


def test_unknown_calculus():
    with pytest.raises(ParseError):
        parse_script("(calculus NOPE)")


def test_duplicate_proof_name():
    text = "(proof p (step Ax :principal ((P a)) :concl (seq ((P a)) ((P a)))))"
    with pytest.raises(ParseError):
        parse_script("(signature (pred P 1))" + text + text)


def test_corpus_round_trip():
    for e in build_corpus():
        script = script_for(e.id, e.proof, e.calc)
        text = print_script(script)
        back = parse_script(text)
        assert back.calculus == e.calc
        name, p = back.main_proof()
        assert name == e.id and p.same_tree(e.proof)
        assert print_script(back) == text


_RANDOM = random_proofs(5, 25)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(_RANDOM))
def test_random_round_trip(p):
    text = print_script(script_for("r", p, CALC))
    assert parse_script(text).main_proof()[1].same_tree(p)


def test_comments_and_whitespace():
    text = """; header
    (calculus GPFL) ; trailing
    (signature (pred P 1))
    (proof p (step Ax :principal ((P a)) :concl (seq ((P a)) ((P a)))))
    """
    s = parse_script(text)
    assert s.calculus == Calc.GPFL and s.signature == Signature(predicates={"P": 1})
