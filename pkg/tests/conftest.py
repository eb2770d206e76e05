import math

import numpy as np
import pytest

from sepqkd.optics import beam_splitter, phase_rotation, squeezer

TAU10 = math.log(10) / 2  # e^{2τ} = 10

_acceptance = []


def random_symplectic(n, rng, layers=4):
    """Product of random beam splitters, squeezers and rotations on ``n`` modes."""
    S = np.eye(2 * n)
    for _ in range(layers):
        for m in range(n):
            S = squeezer(n, m, rng.uniform(-1, 1)) @ S
            S = phase_rotation(n, m, rng.uniform(0, 2 * np.pi)) @ S
        for i in range(n):
            for j in range(i + 1, n):
                S = beam_splitter(n, i, j, rng.uniform(0, 1)) @ S
    return S


def random_physical_cm(n, rng):
    """Thermal state with random variances conjugated by a random symplectic."""
    thermal = np.diag(np.repeat(rng.uniform(1, 5, n), 2))
    S = random_symplectic(n, rng)
    g = S @ thermal @ S.T
    return 0.5 * (g + g.T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
