import numpy as np
import pytest

from mubswitch import computational_basis, fourier_basis, projectors

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def qubit_pair():
    return projectors(computational_basis(2)), projectors(fourier_basis(2))


def mub_pair(d):
    return projectors(computational_basis(d)), projectors(fourier_basis(d))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
