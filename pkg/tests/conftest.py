import pytest
from hypothesis import HealthCheck, settings

from mtlkit.concrete import parse
from mtlkit.models import chain, complete_binary

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def gmc():
    return lambda text: parse(text, "gmc")


@pytest.fixture
def msol():
    return lambda text: parse(text, "msol")


@pytest.fixture
def binary2():
    return complete_binary(2, ("a",))


@pytest.fixture
def chain3_a_leaf():
    return chain(3, {2: {"a"}}, ("a",))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for result in sorted(RESULTS, key=lambda r: r.number):
            terminalreporter.write_line(result.line())
