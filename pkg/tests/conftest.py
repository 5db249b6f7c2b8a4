import warnings

import pytest

from revival import Potential, biortho
from revival.spectral import HypothesisWarning


def pytest_configure(config):
    warnings.simplefilter("ignore", HypothesisWarning)


@pytest.fixture(scope="session")
def free_system():
    return biortho.solve(Potential.zero(grid=2048), 30, 2048)


@pytest.fixture(scope="session")
def mathieu_system():
    V = Potential.mathieu(0.25j)
    pairs, system = biortho.solve(V, 50, 4096)
    return V, pairs, system


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
