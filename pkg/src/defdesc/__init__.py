"""Sequent calculi of free logic with the binary description quantifier I."""
import sys

from .calculus import Calc, Rule, RuleInstance, Sequent, StepError, admitted_rules, check_step
from .kernel import ProofNode, ProofReport, check_proof, cut_degrees, height
from .syntax import (
    And, Const, Desc, E, Eq, Exists, Forall, Formula, Func, Imp, Not, Or, Param, Pred,
    Signature, Template, Term, Var, degree, fresh_parameter, iff, occurs_parameter, substitute,
)

# proof trees produced by cut elimination get deep; recursion follows them
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__all__ = [
    "Calc", "Rule", "RuleInstance", "Sequent", "StepError", "admitted_rules", "check_step",
    "ProofNode", "ProofReport", "check_proof", "cut_degrees", "height",
    "And", "Const", "Desc", "E", "Eq", "Exists", "Forall", "Formula", "Func", "Imp", "Not", "Or",
    "Param", "Pred", "Signature", "Template", "Term", "Var", "degree", "fresh_parameter", "iff",
    "occurs_parameter", "substitute",
]
