import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from frlp.generators import random_signals  # noqa: E402
from frlp.grid import make_grid  # noqa: E402

settings.register_profile(
    "frlp", max_examples=25, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("frlp")

ANGLES = (0.3, math.pi / 4, 1.1, math.pi / 2, 2.0)


@pytest.fixture
def grid():
    return make_grid(1, 8.0, 256)


@pytest.fixture
def signals(grid):
    return random_signals(grid, 5, 1234)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
