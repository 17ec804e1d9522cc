import numpy as np
import pytest

from stickknot.catalog import EXAMPLE_41, UNIT_SQUARE, trefoil_sticks
from stickknot.polygon import validate

ACCEPTANCE_LINES = []


def record_criterion(number, description, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {description}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def example41():
    return validate(EXAMPLE_41)


@pytest.fixture
def square():
    return validate(UNIT_SQUARE * 4.0)


@pytest.fixture
def trefoil():
    return validate(trefoil_sticks())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
