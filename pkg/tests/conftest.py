import re

_RESULTS = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\w+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _RESULTS[m.group(1)] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in sorted(_RESULTS.items(), key=lambda kv: (int(re.match(r"\d+", kv[0]).group()), kv[0])):
        terminalreporter.write_line(f"criterion {name.replace('_', ' ', 1)}: {status}")
