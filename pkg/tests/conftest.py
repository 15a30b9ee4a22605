import pytest

from relgrowth.io import gdp_panel_path

_CRITERIA: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    cid, title = marker.args
    entry = _CRITERIA.setdefault(cid, {"title": title, "passed": True, "checks": 0})
    entry["checks"] += 1
    if rep.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_CRITERIA):
        e = _CRITERIA[cid]
        status = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"{status}  {cid}  {e['title']}  ({e['checks']} checks)")


@pytest.fixture
def gdp_panel():
    return gdp_panel_path()
