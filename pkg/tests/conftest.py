import os

import pytest
from hypothesis import HealthCheck, settings

from bichroma.generators import gen_uniform
from bichroma.geometry import ColoredPoint

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def make_points(*rows):
    """``(x, y, color)`` tuples to points with ids in order."""
    return [ColoredPoint(float(x), float(y), int(c), i) for i, (x, y, c) in enumerate(rows)]


def uniform(n, seed, colors=2):
    return gen_uniform(n, seed, colors).points


@pytest.fixture
def four_point():
    # red, red, blue, blue
    return make_points((0, 0, 0), (10, 1, 0), (10, 0, 1), (0, 1, 1))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
