import pytest

_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = report.failed or (report.when == "call" and report.skipped)
    _, ok, _ = _outcomes.get(number, (title, True, ""))
    notes = ", ".join(f"{k}={v}" for k, v in item.user_properties)
    _outcomes[number] = (title, ok and not failed, notes)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        title, ok, notes = _outcomes[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if notes:
            line += f"  [{notes}]"
        terminalreporter.write_line(line)
