import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, title = mark.args
            _criteria.setdefault(num, {"title": title, "tests": {}})
            item.user_properties.append(("criterion", num))


def pytest_runtest_logreport(report):
    num = dict(report.user_properties).get("criterion")
    if num is None:
        return
    tests = _criteria[num]["tests"]
    if report.when == "call" or report.outcome != "passed":
        # a setup or teardown failure counts against the criterion too
        if tests.get(report.nodeid) != "failed":
            tests[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        entry = _criteria[num]
        outcomes = entry["tests"].values()
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        failed = [nid.split("::")[-1] for nid, o in entry["tests"].items() if o != "passed"]
        detail = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {num:2d}: {status:7s} {entry['title']}{detail}")
