import pytest

from defdesc.calculus import StepError, check_step
from defdesc.kernel import ProofNode, check_proof

from mutants import EIGEN, calc_for, mutants, valid_instance

MUTANTS = mutants()


def test_enough_mutants():
    assert len(MUTANTS) >= 12
    assert len({m.rule.tag for m in MUTANTS}) >= 12


@pytest.mark.parametrize("m", MUTANTS, ids=lambda m: m.name)
def test_mutant_rejected(m):
    with pytest.raises(StepError) as exc:
        check_step(m.conclusion, m.rule, m.premises, m.calc)
    assert type(exc.value) is m.error
    assert exc.value.kind == m.error.__name__


@pytest.mark.parametrize("m", MUTANTS, ids=lambda m: m.name)
def test_mutant_rejected_inside_a_proof(m):
    # the kernel reports the same error at the offending node
    from defdesc.kernel import hyp
    node = ProofNode(m.conclusion, m.rule, tuple(hyp(p) for p in m.premises))
    report = check_proof(node, m.calc)
    assert not report.valid
    assert [(path, type(e)) for path, e in report.errors] == [((), m.error)]


@pytest.mark.parametrize("name", sorted(EIGEN))
def test_unmutated_instance_accepted(name):
    ri = EIGEN[name]
    concl, prems = valid_instance(ri)
    check_step(concl, ri, prems, calc_for(ri.tag))
