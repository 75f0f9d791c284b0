import numpy as np
import pytest

from geodecay.geomeasure import OptimizerOptions

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def opts():
    return OptimizerOptions(restarts=16, seed=7)


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        key = marker
        prev = _ACCEPTANCE.get(key, "PASS")
        ok = report.outcome == "passed"
        _ACCEPTANCE[key] = prev if ok else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        report.acceptance = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), status in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"[{status}] criterion {number:2d}: {title}")
