import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_stochastic(rng, n):
    A = rng.random((n, n)) + 0.05
    return A / A.sum(axis=1, keepdims=True)


CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, passed, detail)``."""
    def record(number, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}"
        CRITERIA.append((number, line))
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(CRITERIA, key=lambda c: c[0]):
            terminalreporter.write_line(line)
