"""Small cut-free derivations reused by the reductions and the corpus.

Identity facts are derived with the left-only identity rules: ``EqI`` rewrites
an antecedent atom ``A(s2)`` to ``s1=s2, A(s1)`` and ``EqE`` discharges a
reflexive identity.
"""
from __future__ import annotations

from .calculus import Rule, RuleInstance, Sequent
from .kernel import ProofNode, adjust, ax, infer
from .syntax import Eq, Template, Term, Var

R = Rule


def eq_template(left: Term | None, right: Term | None) -> Template:
    """``x = right`` or ``left = x``; exactly one side is None."""
    if left is None:
        return Template(Eq(Var(0), right))
    return Template(Eq(left, Var(0)))


def rewrite_up(p: ProofNode, s1: Term, s2: Term, B: Template) -> ProofNode:
    """From ``B(s2), G => D`` infer ``s1=s2, B(s1), G => D``."""
    return infer(RuleInstance(R.EqI, terms=(s1, s2), template=B), p)


def discharge_refl(p: ProofNode, t: Term) -> ProofNode:
    return infer(RuleInstance(R.EqE, terms=(t,)), p)


def basic_rewrite(s1: Term, s2: Term, B: Template) -> ProofNode:
    """``s1=s2, B(s1) => B(s2)``."""
    return rewrite_up(ax(B(s2)), s1, s2, B)


def flip(p: ProofNode, u: Term, v: Term) -> ProofNode:
    """Replace an antecedent ``u=v`` of ``p`` by ``v=u``."""
    q = rewrite_up(p, v, u, eq_template(None, v))
    return discharge_refl(q, v)


def rewrite_back(t1: Term, t2: Term, B: Template) -> ProofNode:
    """``t1=t2, B(t2) => B(t1)``."""
    return flip(basic_rewrite(t2, t1, B), t2, t1)


def trans_chain(t1: Term, t: Term, t2: Term) -> ProofNode:
    """``t1=t, t=t2 => t1=t2``."""
    return basic_rewrite(t, t2, eq_template(t1, None))


def trans_common(t1: Term, t2: Term, t: Term) -> ProofNode:
    """``t1=t, t2=t => t1=t2``."""
    return flip(trans_chain(t1, t, t2), t, t2)


def symmetry(t1: Term, t2: Term) -> ProofNode:
    """``t1=t2 => t2=t1``."""
    return flip(ax(Eq(t2, t1)), t2, t1)


def reflexivity(t: Term) -> ProofNode:
    """``=> t=t``."""
    return discharge_refl(ax(Eq(t, t)), t)


def fit(p: ProofNode, ant=(), suc=()) -> ProofNode:
    """Weaken/contract ``p`` to exactly ``ant => suc``."""
    return adjust(p, Sequent(ant, suc))
