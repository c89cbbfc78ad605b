"""Shared fixtures: small named systems and the acceptance result ledger.

The four builders cover the interesting corners at n = 2: a controllable
cubic feed-forward, a single input shared by both states (dilated), a state
that nothing ever feeds (inaccessible), and the classical linear chain.
"""

import numpy as np
import pytest

from polyctrl.system import Polysystem
from polyctrl.tensor import SparseTensor


def cubic_forward_system(coeff: float = 1.0, gain: float = 1.0) -> Polysystem:
    """dx1 = gain * u, dx2 = coeff * x1^3.  Controllable."""
    return Polysystem(
        SparseTensor(4, 2, {(1, 1, 1, 2): coeff}),
        np.array([[gain], [0.0]]),
    )


def shared_input_system() -> Polysystem:
    """Zero drift, one input feeding both states.  Dilated: two states, one edge."""
    return Polysystem(SparseTensor(4, 2, {}), np.array([[1.0], [1.0]]))


def self_loop_system() -> Polysystem:
    """dx1 = x1^3 + u, dx2 = 0.  State 2 is inaccessible."""
    return Polysystem(
        SparseTensor(4, 2, {(1, 1, 1, 1): 1.0}),
        np.array([[1.0], [0.0]]),
    )


def linear_chain_system() -> Polysystem:
    """k = 2 chain dx1 = u, dx2 = x1, the smallest classical testbed."""
    return Polysystem(SparseTensor(2, 2, {(1, 2): 1.0}), np.array([[1.0], [0.0]]))


# Acceptance criteria report one line each at the end of the run, pass or
# fail, so the verdict is readable without digging through tracebacks.
_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class AcceptanceLog:
    def record(self, criterion: int, passed: bool, detail: str) -> None:
        _ACCEPTANCE[criterion] = (bool(passed), detail)


@pytest.fixture(scope="session")
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")
