"""Collects acceptance results so each criterion gets one PASS/FAIL line in the summary."""

import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    n = marker.args[0]
    ok = report.passed
    detail = dict(item.user_properties).get("detail", "")
    if not ok and report.longrepr is not None:
        detail = detail or str(report.longrepr).strip().splitlines()[-1]
    prev = _results.get(n)
    if prev is None or prev[0]:
        _results[n] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        ok, detail = _results[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line}  {detail}" if detail else line)
