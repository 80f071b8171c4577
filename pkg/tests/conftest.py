from __future__ import annotations

import pytest

# number -> {"title": str, "outcomes": [bool], "notes": [str]}
ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")
    config.stash[ACCEPTANCE] = {}


def _entry(config, marker):
    number, title = marker.args
    return config.stash[ACCEPTANCE].setdefault(number, {"title": title, "outcomes": [], "notes": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _entry(item.config, marker)["outcomes"].append(None if rep.skipped else rep.passed)


@pytest.fixture
def note(request):
    """Attach a measured figure to the summary line of the test's criterion."""
    marker = request.node.get_closest_marker("criterion")
    entry = _entry(request.config, marker)
    return entry["notes"].append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash[ACCEPTANCE]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        e = results[number]
        outcomes = e["outcomes"]
        ran = [o for o in outcomes if o is not None]
        status = "SKIP" if not ran else "PASS" if all(ran) else "FAIL"
        line = f"[{status}] {number}. {e['title']} ({sum(ran)}/{len(ran)} checks passed)"
        if e["notes"]:
            line += ": " + "; ".join(e["notes"])
        terminalreporter.write_line(line)
