import warnings

import pytest

from acceptance_report import RESULTS


@pytest.fixture(autouse=True)
def _quiet_hopping_warnings():
    # |delta| close to 1 is legitimate in sweeps; the warning is for interactive use
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=r"\|delta\| >= 1")
        yield


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
