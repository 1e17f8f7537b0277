import pytest

from hpfield.exterior import kernels

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_report_header(config):
    return f"hpfield kernel backend: {kernels.BACKEND}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)
