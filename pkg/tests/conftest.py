import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lvdarboux.lv import LVParams  # noqa: E402

# Filled by test_acceptance.py; printed once at the end of the run.
ACCEPTANCE_LINES: dict[int, str] = {}


def random_fraction(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_params(rng: random.Random, bound: int = 5) -> LVParams:
    return LVParams(*(random_fraction(rng, bound) for _ in range(3)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
