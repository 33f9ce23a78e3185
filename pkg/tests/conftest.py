"""Collect one pass/fail line per acceptance criterion and print them at the end."""

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    label = props.get("criterion", report.nodeid.rsplit("::", 1)[-1])
    status = "PASS" if report.passed else "FAIL"
    _ACCEPTANCE[label] = (status, props.get("summary", ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE):
        status, summary = _ACCEPTANCE[label]
        terminalreporter.write_line(f"{status}  {label}  {summary}".rstrip())
