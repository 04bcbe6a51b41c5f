import pytest

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.keywords.get("acceptance")
    if marker is None:
        return
    key = report.nodeid.split("::")[-1]
    passed = report.passed and not report.skipped
    _acceptance[key] = _acceptance.get(key, True) and passed


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


@pytest.fixture
def squeezed75():
    from squeezeforce import squeeze_from_degree

    return squeeze_from_degree(0.75, 0.8 * 3.141592653589793)
