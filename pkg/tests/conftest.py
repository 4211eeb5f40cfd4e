import itertools
import random

import pytest

from psbtours import Tour, is_psb


def psb_by_filter(n):
    """Every PSB tour found by filtering all permutations that start at city 1."""
    out = []
    for rest in itertools.permutations(range(2, n + 1)):
        t = Tour.from_cycle((1,) + rest)
        if is_psb(t):
            out.append(t)
    return out


@pytest.fixture
def rng():
    return random.Random(20261015)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
