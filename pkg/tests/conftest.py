import sys
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
sys.path.insert(0, str(Path(__file__).resolve().parent))


def load(name):
    return np.loadtxt(FIXTURES / f"{name}.csv", delimiter=",", ndmin=2)


@pytest.fixture
def fixture():
    return load


@pytest.fixture
def rng():
    return np.random.default_rng(20091)


ACCEPTANCE_LINES = []


def record_criterion(number, title, checks):
    """Print one PASS/FAIL line for a criterion and fail the test if any check failed.

    ``checks`` is a list of ``(description, ok)`` pairs.
    """
    failed = [desc for desc, ok in checks if not ok]
    verdict = "PASS" if not failed else "FAIL"
    line = f"[{verdict}] criterion {number}: {title}"
    if failed:
        line += " -- failed: " + "; ".join(failed)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failed, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
