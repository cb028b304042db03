import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def assoc4():
    from assocforge.solver import SolverConfig, build_associator

    return build_associator(SolverConfig(4, even=True))


@pytest.fixture(scope="session")
def assoc5():
    from assocforge.solver import SolverConfig, build_associator

    return build_associator(SolverConfig(5, even=True))


@pytest.fixture(scope="session")
def grt3():
    from assocforge.grt import grt_lie_solutions

    return grt_lie_solutions(3).basis[0]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
