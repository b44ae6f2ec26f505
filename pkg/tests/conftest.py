"""Collects ``criterion`` markers and prints one ACCEPT line per criterion."""
import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _results.setdefault(number, {"title": title, "ok": True, "tests": 0})
    if report.when == "call":
        entry["tests"] += 1
    if report.failed or (report.when == "setup" and report.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "PASS" if entry["ok"] and entry["tests"] else "FAIL"
        terminalreporter.write_line(f"ACCEPT {number:>2} {status} {entry['title']}")
    passed = sum(e["ok"] and e["tests"] > 0 for e in _results.values())
    terminalreporter.write_line(f"ACCEPT total {passed}/{len(_results)}")
