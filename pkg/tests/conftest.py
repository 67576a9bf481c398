import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from polykit.lattice import make  # noqa: E402

NAMED = ["simplex(1,1)", "simplex(2,1)", "simplex(2,2)", "simplex(3,1)", "segment(2)",
         "square", "P_fig1", "P_trap", "pyr4", "P_nonrig"]


@pytest.fixture(scope="session")
def corpus():
    return {name: make(name) for name in NAMED}


@pytest.fixture(scope="session")
def trap():
    return make("P_trap")


@pytest.fixture(scope="session")
def pyr4():
    return make("pyr4")


@pytest.fixture(scope="session")
def nonrig():
    return make("P_nonrig")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.REPORT):
        terminalreporter.write_line(mod.REPORT[n])
