import pytest

from submodgreedy.core import CoverageInstance

ACCEPTANCE_RESULTS = []


@pytest.fixture
def c4():
    # universe {1,2,3,4} mapped to indices 0..3
    return CoverageInstance([1, 1, 1, 1], [[0, 1, 2], [0, 1], [2, 3], [3]])


@pytest.fixture
def record_acceptance():
    def record(label, passed, detail=""):
        ACCEPTANCE_RESULTS.append((label, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
