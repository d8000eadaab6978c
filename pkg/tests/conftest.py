"""Collects the outcome of every acceptance criterion and prints one line each."""
import re

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    n, name = int(m.group(1)), m.group(2)
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        if _CRITERIA.get(n, ("PASS",))[0] == "FAIL":
            status = "FAIL"  # parametrized criteria pass only if every case does
        _CRITERIA[n] = (status, name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, name = _CRITERIA[n]
        terminalreporter.write_line(f"{status}  criterion {n}: {name.replace('_', ' ')}")
