from pathlib import Path

import pytest

from defdesc.corpus import build_corpus, entry
from defdesc.kernel import ax
from defdesc.render import plain, render, tex_formula, typeset
from defdesc.syntax import Desc, E, Param, Pred, Var

DATA = Path(__file__).parent / "data"


def test_axiom_line():
    assert plain(ax(Pred("P", (Param("a0"),)))) == "P(a0) => P(a0)   [Ax]"


def test_mp_bicond_left_golden():
    out = plain(entry("mp-bicond-left").proof)
    assert out + "\n" == (DATA / "mp-bicond-left.txt").read_text()
    assert len(out.splitlines()) >= 5


def test_tex_formula():
    d = Desc(Pred("P", (Var(0),)), E(Var(0)))
    assert tex_formula(d) == r"\mathrm{I}x[P(x), \exists! x]"
    assert tex_formula(Pred("P", (Param("a12"),))) == "P(a_{12})"


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s.replace(r"\{", "").replace(r"\}", ""):
        depth += ch == "{"
        depth -= ch == "}"
        if depth < 0:
            return False
    return depth == 0


@pytest.mark.parametrize("e", build_corpus(), ids=lambda e: e.id)
def test_typeset_structure(e):
    # no TeX in the test environment, so check what a compile would need
    src = typeset(e.proof)
    assert src.startswith("\\documentclass") and src.rstrip().endswith("\\end{document}")
    assert "\\usepackage{bussproofs}" in src
    assert _balanced(src)
    nodes = list(e.proof)
    leaves = sum(1 for n in nodes if not n.premises)
    assert src.count("\\AxiomC{}") == leaves
    assert src.count("\\LeftLabel") == len(nodes)
    assert src.count("\\begin{prooftree}") == 1


def test_render_dispatch():
    p = ax(Pred("P", (Param("a"),)))
    assert render(p, "plain") == plain(p)
    assert "\\begin{prooftree}" in render(p, "typeset")
    with pytest.raises(ValueError):
        render(p, "svg")
