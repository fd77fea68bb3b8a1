from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from podles.scalars import default_context
from podles.spectral import TruncatedSpace

settings.register_profile(
    "podles",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("podles")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ctx():
    return default_context().activate()


@pytest.fixture(scope="session")
def small_space(ctx):
    return TruncatedSpace(Fraction(21, 2), ctx)


@pytest.fixture(autouse=True)
def _restore_precision(ctx):
    ctx.activate()
    yield
    ctx.activate()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
