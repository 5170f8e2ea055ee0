import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = report.user_properties and dict(report.user_properties).get("acceptance")
    if label:
        _acceptance.append((label, "PASS" if report.passed else "FAIL"))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker and not any(k == "acceptance" for k, _ in item.user_properties):
        item.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome}  {label}")
