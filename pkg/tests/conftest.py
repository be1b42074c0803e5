import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed or report.skipped:
        if report.failed:
            outcome = "FAIL"
        elif report.skipped:
            outcome = "SKIP"
        else:
            outcome = "PASS"
        if n not in _results or outcome != "PASS":
            _results[n] = (outcome, m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcome, name = _results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {outcome}  {name}")
