import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


def data_path(*parts):
    from gdhkit.classify import data_dir
    return data_dir().joinpath(*parts)


def require_data(*parts):
    """Skip (not fail) when a bundled data file is missing."""
    p = data_path(*parts)
    if not p.exists():
        pytest.skip(f"data file {p} not available")
    return p


# --- acceptance summary: one line per criterion, whatever the verbosity

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        state = "SKIP" if rep.skipped else ("PASS" if rep.passed else "FAIL")
        _CRITERIA[num] = (text, state, getattr(rep, "duration", 0.0))
    elif rep.when == "setup" and rep.failed:
        _CRITERIA[num] = (text, "FAIL", 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        text, state, secs = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {state}  ({secs:6.1f} s)  {text}")
