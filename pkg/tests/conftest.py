import numpy as np
import pytest

from qse_toolkit import TwoQubitState, amplitude_damping, apply_local_B, bell_diagonal
from qse_toolkit.pauli import density_from_bloch, ket, projector
from qse_toolkit.sampling import random_bloch

PLUS = projector(ket(1, 1))
ZERO = projector(ket(1, 0))
ONE = projector(ket(0, 1))


def branch_needle(b_plus, b_zero):
    """1/2 |+><+| (x) rho(b_plus) + 1/2 |0><0| (x) rho(b_zero)."""
    return TwoQubitState(
        0.5 * np.kron(PLUS, density_from_bloch(b_plus)) + 0.5 * np.kron(ZERO, density_from_bloch(b_zero))
    )


def random_branch_needle(rng):
    return branch_needle(random_bloch(rng), random_bloch(rng))


def ad_output(c, p):
    return apply_local_B(bell_diagonal(c), amplitude_damping(p))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
