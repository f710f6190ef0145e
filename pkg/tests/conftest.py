import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m and (report.when == "call" or report.failed):
        key = (int(m.group(1)), m.group(2))
        _results[key] = _results.get(key, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), ok in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {n:2d} {name:<20} {'PASS' if ok else 'FAIL'}")
