import hypothesis
import pytest

from central_aut.construction import build_f_matrix
from central_aut.gf import PrimeField
from central_aut.pgroup import build_presentation

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def f2():
    return build_f_matrix(PrimeField(2), 3)


@pytest.fixture(scope="session")
def f3():
    return build_f_matrix(PrimeField(3), 3)


@pytest.fixture(scope="session")
def pres2(f2):
    return build_presentation(f2)


@pytest.fixture(scope="session")
def pres3(f3):
    return build_presentation(f3)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
