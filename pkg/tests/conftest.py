import math

import numpy as np
import pytest
from hypothesis import settings

from helixsrf.helix import SAUSAGE_ALPHA, SAUSAGE_OMEGA

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

W_R = SAUSAGE_OMEGA
A_R = SAUSAGE_ALPHA
CHORD_R = math.sqrt(300.0 / 81.0)


def explicit_points(omega, alpha, n):
    """Helix coordinates written out independently of the library."""
    return np.array([[math.cos(i * omega), math.sin(i * omega), alpha * i * omega] for i in range(n)])


@pytest.fixture
def sausage():
    return W_R, A_R


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
