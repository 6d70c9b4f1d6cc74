import pytest
from hypothesis import HealthCheck, settings

from nicehf import diagram as dg

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus():
    return dg.corpus(7)


@pytest.fixture
def sphere():
    return dg.make_s3_sphere()


@pytest.fixture
def torus():
    return dg.make_s3_torus()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
