"""Repeat the acceptance criterion lines after the run, outside capture."""

import re

_NODE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_results: dict = {}


def pytest_runtest_logreport(report):
    match = _NODE.search(report.nodeid)
    if not match:
        return
    num = int(match.group(1))
    if report.failed:
        _results[num] = False
    elif report.when == "call" and report.passed:
        _results.setdefault(num, True)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        CRITERIA = {}
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_results):
        status = "PASS" if _results[num] else "FAIL"
        label = CRITERIA.get(num, "")
        terminalreporter.write_line(
            "[%s] criterion %02d: %s" % (status, num, label))
