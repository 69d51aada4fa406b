import numpy as np
import pytest

# golden d, e and c values are all computed from these two samples
DATA1 = [0, 1, 2, 3, 4]
DATA2 = [0, 0, 1, 2, 2]

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
