import pytest

from defdesc.calculus import Calc, Sequent
from defdesc.corpus import EX, F, desc, russell, si1_from, si2_from_rules
from defdesc.search import prove


@pytest.fixture(scope="session")
def russell_lemmas():
    """Closed proofs of the Russellian sequents the templates assume."""
    si2e = Sequent([desc(F, EX), desc(F, EX)], [russell(F, EX)])
    proofs = [si1_from(), si1_from(EX), si2_from_rules(), prove(si2e, Calc.GPFL_EQ_I)]
    return {p.conclusion: p for p in proofs}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
