import re

from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

_CRITERIA: dict[int, tuple[str, str]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    m = _NAME.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    prev = _CRITERIA.get(n)
    outcome = "PASS" if report.passed else "FAIL"
    if prev and prev[0] == "FAIL":
        outcome = "FAIL"
    label = prev[1] if prev else m.group(2).replace("_", " ")
    _CRITERIA[n] = (outcome, label)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcome, label = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {outcome}  {label}")
