"""Text and LaTeX (bussproofs) renderings of proof trees."""
from __future__ import annotations

from .calculus import Sequent, show_sequent
from .kernel import ProofNode
from .syntax import (
    And, Desc, E, Eq, Exists, Forall, Formula, Func, Imp, Not, Or, Pred, Term, Var,
)

FORMATS = ("plain", "typeset")


def _label(p: ProofNode) -> str:
    return p.tag.value


def plain(p: ProofNode) -> str:
    """One sequent per line, premises indented under their conclusion."""
    lines = []
    stack = [(p, 0)]
    while stack:
        node, depth = stack.pop()
        lines.append(f"{'  ' * depth}{show_sequent(node.conclusion)}   [{_label(node)}]")
        stack.extend((q, depth + 1) for q in reversed(node.premises))
    return "\n".join(lines)


# -- LaTeX ----------------------------------------------------------------------

def _tex_ident(name: str) -> str:
    head = name.rstrip("0123456789")
    digits = name[len(head):]
    head = head.replace("_", r"\_")
    if len(head) > 1:
        head = rf"\mathit{{{head}}}"
    return head + (f"_{{{digits}}}" if digits else "")


def tex_term(t: Term, names: tuple[str, ...] = ()) -> str:
    if isinstance(t, Var):
        return _tex_ident(names[-1 - t.index])
    if isinstance(t, Func):
        return _tex_ident(t.symbol) + "(" + ", ".join(tex_term(s, names) for s in t.args) + ")"
    return _tex_ident(t.name)


def tex_formula(f: Formula, names: tuple[str, ...] = (), top: bool = True) -> str:
    t = lambda s: tex_term(s, names)
    if isinstance(f, Pred):
        args = "(" + ", ".join(map(t, f.args)) + ")" if f.args else ""
        return _tex_ident(f.symbol) + args
    if isinstance(f, Eq):
        return f"{t(f.left)} = {t(f.right)}"
    if isinstance(f, E):
        return rf"\exists! {t(f.arg)}"
    if isinstance(f, Not):
        return r"\neg " + tex_formula(f.body, names, False)
    if isinstance(f, (And, Or, Imp)):
        op = {And: r"\land", Or: r"\lor", Imp: r"\rightarrow"}[type(f)]
        s = f"{tex_formula(f.left, names, False)} {op} {tex_formula(f.right, names, False)}"
        return s if top else f"({s})"
    if isinstance(f, (Forall, Exists)):
        q = r"\forall" if isinstance(f, Forall) else r"\exists"
        v = f.var
        while v in names:
            v += "'"
        return f"{q} {_tex_ident(v)}\\, {tex_formula(f.body, names + (v,), False)}"
    if isinstance(f, Desc):
        v = f.var
        while v in names:
            v += "'"
        inner = names + (v,)
        return (rf"\mathrm{{I}}{_tex_ident(v)}[{tex_formula(f.restrictor, inner)}, "
                rf"{tex_formula(f.scope, inner)}]")
    raise TypeError(f"not a formula: {f!r}")


def tex_sequent(s: Sequent) -> str:
    ant = ", ".join(tex_formula(f) for f in s.ant)
    suc = ", ".join(tex_formula(f) for f in s.suc)
    return f"${ant} \\Rightarrow {suc}$"


_INF = {1: "UnaryInfC", 2: "BinaryInfC", 3: "TrinaryInfC", 4: "QuaternaryInfC", 5: "QuinaryInfC"}


def typeset(p: ProofNode, standalone: bool = True) -> str:
    """bussproofs source, one inference per node, rule names as left labels."""
    out: list[str] = []
    # postorder without recursion: premises must be emitted before their conclusion
    stack: list[tuple[ProofNode, bool]] = [(p, False)]
    while stack:
        node, expanded = stack.pop()
        if not expanded and node.premises:
            stack.append((node, True))
            stack.extend((q, False) for q in reversed(node.premises))
            continue
        label = rf"\LeftLabel{{\scriptsize {_label(node)}}}"
        if not node.premises:
            out.append(r"\AxiomC{}")
            out.append(label)
            out.append(rf"\UnaryInfC{{{tex_sequent(node.conclusion)}}}")
        else:
            out.append(label)
            out.append(rf"\{_INF[len(node.premises)]}{{{tex_sequent(node.conclusion)}}}")
    body = "\\begin{prooftree}\n" + "\n".join(out) + "\n\\end{prooftree}"
    if not standalone:
        return body
    return ("\\documentclass{article}\n\\usepackage{amssymb}\n\\usepackage{bussproofs}\n"
            "\\usepackage[paperwidth=200cm,paperheight=100cm,margin=1cm]{geometry}\n"
            "\\begin{document}\n" + body + "\n\\end{document}\n")


def render(p: ProofNode, fmt: str = "plain") -> str:
    if fmt == "plain":
        return plain(p)
    if fmt == "typeset":
        return typeset(p)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
