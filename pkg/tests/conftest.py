import pytest

from cycloprimes.survey import run_survey

_acceptance = {}


@pytest.fixture(scope="session")
def survey12():
    """The k <= 12 survey, shared because it takes several seconds."""
    return run_survey(12)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _acceptance[number] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, ok = _acceptance[number]
        terminalreporter.write_line("%s criterion %d: %s" % ("PASS" if ok else "FAIL", number, title))
