_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when == "teardown" or (call.when == "setup" and call.excinfo is None):
        return
    num, title = marker.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _criteria[num] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, outcome = _criteria[num]
        terminalreporter.write_line(f"criterion {num}: {outcome}  {title}")
