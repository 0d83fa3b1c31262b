import random
from fractions import Fraction as F

import pytest

from wassalg import DiscreteMeasure, RealLine, dirac

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def line():
    return RealLine()


@pytest.fixture
def half_half(line):
    """{0: 1/2, 1: 1/2} on the line."""
    return DiscreteMeasure(line, [0, 1], [F(1, 2), F(1, 2)])


@pytest.fixture
def delta0(line):
    return dirac(line, F(0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
