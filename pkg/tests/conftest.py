import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from etodim.core import EvaluationMatrix  # noqa: E402

EXAMPLE1 = [
    [0.1147, 0.9913, 0.4275],
    [0.7880, 0.4822, 0.2693],
    [0.3189, 0.3297, 0.2803],
]
EXAMPLE1_A4 = [0.8043, 0.091, 0.9674]


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ETODIM_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow: set ETODIM_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def example1():
    return EvaluationMatrix.from_array(EXAMPLE1)


@pytest.fixture
def example1_a4():
    return np.array([EXAMPLE1_A4])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
