import math

import pytest
from hypothesis import HealthCheck, settings

from blzmonster.partitions import Partition, enumerate_partitions
from blzmonster.rational_extensions import build_extension

# derandomized so that reruns are reproducible
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")

FIG_ALPHA = math.pi / 3
FIG_L = 7e4


@pytest.fixture(scope="session")
def catalog5():
    return [build_extension(p) for p in enumerate_partitions(5)]


@pytest.fixture(scope="session")
def ext():
    cache = {}

    def get(*parts):
        p = Partition(parts)
        if p not in cache:
            cache[p] = build_extension(p)
        return cache[p]

    return get


# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
