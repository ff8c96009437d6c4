import pytest

from threebody.system import ThreeBodySystem

HELIUM_NUCLEUS = 7294.299536
PROTON = 1836.1527

_acceptance_lines = []


@pytest.fixture
def helium():
    return ThreeBodySystem((-1, -1, 2), (1.0, 1.0, HELIUM_NUCLEUS))


@pytest.fixture
def ps_minus():
    return ThreeBodySystem((-1, 1, -1), (1.0, 1.0, 1.0))


@pytest.fixture
def positron_hydrogen():
    return ThreeBodySystem((1, -1, 1), (1.0, 1.0, PROTON))


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(label, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail}"
        _acceptance_lines.append(line)
        print(line)
        assert passed, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
