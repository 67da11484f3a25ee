import sys

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")

    def order(line):
        label = line.split()[1]
        digits = "".join(ch for ch in label if ch.isdigit())
        return int(digits), label

    for line in sorted(lines, key=order):
        terminalreporter.write_line(line)
