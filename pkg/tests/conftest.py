import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--heuristic", action="store_true", default=False, help="run statistical checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heuristic"):
        return
    skip = pytest.mark.skip(reason="heuristic check; enable with --heuristic")
    for item in items:
        if "heuristic" in item.keywords:
            item.add_marker(skip)


_acceptance: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = f"{marker.args[0]:>2}. {marker.args[1]}"
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _acceptance[label] = f"{status}  {label} ({rep.duration:.2f}s)"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_acceptance.values(), key=lambda s: int(s.split(".")[0].split()[-1])):
        terminalreporter.write_line(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
