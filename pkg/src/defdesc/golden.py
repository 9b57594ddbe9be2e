"""Handcrafted proofs with cuts, each aimed at a particular reduction case."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .calculus import Calc
from .corpus import (
    EX, F, G, a, b, bridge_backward, bridge_forward, c, desc, exists, forall, si1_from,
    si2_from_rules,
)
from .kernel import ProofNode, cut, infer, weaken
from .calculus import Rule
from .randproof import Generator
from .syntax import And, Eq, Imp, Not, Or, Param, Pred, Template, Var


@dataclass(frozen=True)
class GoldenCase:
    name: str
    proof: ProofNode
    calc: Calc
    expect: str = ""    # a trace case that must occur, e.g. "right.principal:RI/LI2"


def _gen() -> Generator:
    return Generator(random.Random(0))


def _ri_vs(tag: str, scope: Template, t=c) -> ProofNode:
    g = _gen()
    D = desc(F, scope)
    return cut(g.right_description(D, t), g.left_description(D, tag), D)


def _eta_cut(A) -> ProofNode:
    g = _gen()
    return cut(g.eta(A), g.eta(A), A)


def golden_suite() -> list[GoldenCase]:
    P, Q = (lambda t: Pred("P", (t,))), (lambda t: Pred("Q", (t,)))
    at_c = Template(Eq(Var(0), c))
    y = Param("_y")
    some = exists(y, desc(F, Template(Eq(Var(0), y))), "y")
    K = Calc.GPFL_EQ_I
    cases = [
        GoldenCase("ri-li1", _ri_vs("LI1", G), K, "right.principal:RI/LI1"),
        GoldenCase("ri-li2-exists", _ri_vs("LI2", EX), K, "right.principal:RI/LI2"),
        GoldenCase("ri-li3-exists", _ri_vs("LI3", EX), K, "right.principal:RI/LI3"),
        GoldenCase("ri-li4-eq", _ri_vs("LI4", at_c), K, "right.principal:RI/LI4"),
        GoldenCase("ri-li5-eq", _ri_vs("LI5", at_c), K, "right.principal:RI/LI5"),
        GoldenCase("si1-si2", cut(si1_from(), si2_from_rules(), desc(F, G)), K,
                   "right.principal:RI/LI1"),
        GoldenCase("bridge-forward", bridge_forward(), K, "gap.search"),
        GoldenCase("bridge-roundtrip", cut(bridge_backward(), bridge_forward(), some), K,
                   "right.principal:REx/LEx"),
        GoldenCase("bridge-roundtrip-back", cut(bridge_forward(), bridge_backward(), desc(F, EX)),
                   K, "right.principal:RI/LI3"),
        GoldenCase("eta-and", _eta_cut(And(P(a), Q(b))), K, "right.principal:RAnd/LAnd"),
        GoldenCase("eta-or", _eta_cut(Or(P(a), Q(a))), K, "right.principal:ROr/LOr"),
        GoldenCase("eta-imp", _eta_cut(Imp(P(a), Imp(Q(a), P(b)))), K,
                   "right.principal:RImp/LImp"),
        GoldenCase("eta-not", _eta_cut(Not(And(P(a), Not(Q(a))))), K,
                   "right.principal:RNeg/LNeg"),
        GoldenCase("eta-forall", _eta_cut(forall(b, Imp(P(b), Q(b)))), K,
                   "right.principal:RAll/LAll"),
        GoldenCase("eta-exists", _eta_cut(exists(b, And(P(b), Q(b)))), K,
                   "right.principal:REx/LEx"),
        GoldenCase("contracted", _contracted(), K, "left.contraction"),
    ]
    return cases


def _contracted() -> ProofNode:
    """A cut formula contracted on the right above the cut."""
    g = _gen()
    A = And(Pred("P", (a,)), Pred("Q", (a,)))
    left = infer(Rule.RC, weaken(g.eta(A), right=[A]), main=A)
    return cut(left, g.eta(A), A)
