import sys

import pytest

from agm_jellyfish import make_field

SMALL_Q = [7, 11, 19, 23, 27, 31]


@pytest.fixture(scope="session")
def f19():
    return make_field(19)


@pytest.fixture(scope="session")
def f27():
    return make_field(3, 3)


def pytest_terminal_summary(terminalreporter):
    # acceptance lines are collected by tests/test_acceptance.py, if it ran
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
