"""Collects acceptance outcomes and prints one line per criterion."""

from __future__ import annotations

from collections import defaultdict

_OUTCOMES: dict[int, list[bool]] = defaultdict(list)
_NOTES: dict[int, list[str]] = defaultdict(list)
_CRITERION_OF: dict[str, int] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERION_OF[item.nodeid] = mark.args[0]


def pytest_runtest_logreport(report):
    n = _CRITERION_OF.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _OUTCOMES[n].append(report.passed)
        _NOTES[n].extend(str(v) for k, v in report.user_properties if k == "note")


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        status = "PASS" if all(_OUTCOMES[n]) else "FAIL"
        notes = "; ".join(_NOTES[n])
        terminalreporter.write_line(f"criterion {n}: {status}" + (f"  ({notes})" if notes else ""))
