import numpy as np
import pytest

from qeit.params import SystemParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def detuned():
    return SystemParams(g1=1.0, g2=1.3, delta1=0.05, delta2=0.02)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
