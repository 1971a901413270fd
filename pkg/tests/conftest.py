import math
import sys

import pytest

from distorder.spectrum import CharacteristicRoot

BETA = math.sqrt(2.0)


@pytest.fixture
def beta():
    return BETA


@pytest.fixture
def lam1():
    return CharacteristicRoot(1, BETA)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line)
