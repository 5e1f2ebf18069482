import warnings

import pytest

from membrane_kit.errors import PhysicsWarning


@pytest.fixture
def no_physics_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("error", PhysicsWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    import _report

    if _report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in _report.LINES:
            terminalreporter.write_line(line)
