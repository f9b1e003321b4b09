import pytest

from nodalcurves.fieldcore import field_make


@pytest.fixture(scope="session")
def F101():
    return field_make("finite", 101)


@pytest.fixture(scope="session")
def QQ():
    return field_make("rationals")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n][1])
