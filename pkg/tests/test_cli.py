import json
from pathlib import Path

import pytest

from defdesc.cli import main
from defdesc.script import parse_script

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def emitted(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    assert main(["corpus", "--emit", str(d)]) == 0
    return d


def test_corpus_emit_and_check(emitted, capsys):
    files = sorted(emitted.glob("*.proof"))
    assert len(files) == 14
    for f in files:
        code, out, _ = run(capsys, "check", str(f))
        assert code == 0, out
    code, out, _ = run(capsys, "check", str(emitted / "thm1-d.proof"))
    assert code == 0 and "valid: True" in out


def test_check_json(emitted, capsys):
    code, out, _ = run(capsys, "check", "--json", str(emitted / "thm1-ai.proof"))
    payload = json.loads(out)["thm1-ai"]
    assert code == 0 and payload["valid"] and not payload["closed"]
    assert payload["calculus"] == "GPFL_EQ_I" and payload["matches_sequent"]


def test_elim_ri_li1(tmp_path, capsys):
    out_file = tmp_path / "out.proof"
    trace_file = tmp_path / "trace.json"
    code, _, _ = run(capsys, "elim", str(DATA / "cut-ri-li1.proof"), "-o", str(out_file),
                     "--trace", str(trace_file))
    assert code == 0
    text = out_file.read_text()
    assert "(step Cut" not in text
    code, out, _ = run(capsys, "check", str(out_file))
    assert code == 0
    trace = json.loads(trace_file.read_text())
    assert trace["iterations"] and "right.principal:RI/LI1" in trace["cases"]


def test_elim_json(capsys):
    code, out, _ = run(capsys, "elim", "--json", str(DATA / "cut-ri-li1.proof"))
    payload = json.loads(out)
    assert code == 0 and payload["cut_count"] == 0 and payload["input_cuts"] == 1
    _, p = parse_script(payload["script"]).main_proof()
    assert all(n.tag.value != "Cut" for n in p)


def test_broken_eigen(capsys):
    code, out, _ = run(capsys, "check", str(DATA / "broken-eigen.proof"))
    assert code == 1
    assert "EigenvariableViolation" in out and "root:" in out
    code, out, _ = run(capsys, "check", "--json", str(DATA / "broken-eigen.proof"))
    err = json.loads(out)["broken-eigen"]["errors"][0]
    assert err == {"path": "root", "kind": "EigenvariableViolation",
                   "message": "RAll: eigenvariable a0 occurs in the conclusion"}


def test_elim_refuses_invalid_input(capsys):
    code, _, err = run(capsys, "elim", str(DATA / "broken-eigen.proof"))
    assert code == 1 and "not valid" in err


def test_prove(capsys):
    code, out, _ = run(capsys, "prove", "(seq ((P a0)) ((P a0)))", "--calculus", "GPFL")
    assert code == 0 and "(step Ax" in out
    code, out, _ = run(capsys, "prove", "(seq () ((ex! c)))", "--calculus", "GPFL_EQ",
                       "--depth", "3", "--signature", "(const c)")
    assert code == 1 and out.strip() == "exhausted: frontier 0; open branch {E!c right}"


def test_prove_parse_error(capsys):
    code, _, err = run(capsys, "prove", "(seq ((Z a0)) ())", "--calculus", "GPFL")
    assert code == 1 and err.startswith("error: 1:")


def test_render(capsys):
    code, out, _ = run(capsys, "render", str(DATA / "cut-ri-li1.proof"))
    assert code == 0 and out.splitlines()[0].endswith("[Cut]")
    code, out, _ = run(capsys, "render", "--format", "typeset", str(DATA / "cut-ri-li1.proof"))
    assert code == 0 and "\\begin{prooftree}" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "/nonexistent.proof")
    assert code == 1 and "error:" in err


def test_parse_error_position(tmp_path, capsys):
    f = tmp_path / "bad.proof"
    f.write_text("(calculus GPFL)\n(signature (pred P 1))\n(sequent s (seq ((P a b)) ()))\n")
    code, _, err = run(capsys, "check", str(f))
    assert code == 1 and f"{f}:3:" in err and "ArityError" in err
