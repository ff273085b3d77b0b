import pytest

_criteria: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    detail = "; ".join(f"{k} {v}" for k, v in item.user_properties)
    _criteria.append(("PASS" if report.passed else "FAIL", marker.args[0], detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for tag, label, detail in sorted(_criteria, key=lambda c: int(c[1].split(".")[0])):
        terminalreporter.write_line(f"{tag}  {label}" + (f"  [{detail}]" if detail else ""))
