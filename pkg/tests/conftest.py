import re

_RESULTS = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_(criterion_(\d+)\w*)", report.nodeid)
    if not m:
        return
    key = (int(m.group(2)), m.group(1))
    if report.when == "call" or report.failed:
        prev = _RESULTS.get(key, "PASS")
        _RESULTS[key] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_RESULTS.items()):
        note = " (informational)" if num == 9 else ""
        terminalreporter.write_line(f"{verdict} criterion {num}: {name}{note}")
