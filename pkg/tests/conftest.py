import random

import pytest

from gradedkernel.geometry import Chart

# pass/fail lines announced by the acceptance criteria; echoed after the run
ANNOUNCEMENTS = []


def announce(line):
    print(line)
    ANNOUNCEMENTS.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ANNOUNCEMENTS:
        terminalreporter.section("acceptance criteria")
        for line in ANNOUNCEMENTS:
            terminalreporter.write_line(line)


@pytest.fixture
def mixed_chart():
    return Chart.build([("x", 0, 0), ("y", 0, 2), ("xi", 1, 1), ("eta", 1, -1)], "M")


@pytest.fixture
def rng():
    return random.Random(20240809)
