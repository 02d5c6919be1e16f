import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}      # number -> list of (label, outcome)
_PENDING = {}       # nodeid -> (number, label)


@pytest.fixture
def criterion(request):
    """Register the running test as evidence for an acceptance criterion."""
    def register(number, label):
        _PENDING[request.node.nodeid] = (number, label)
    return register


def pytest_runtest_logreport(report):
    if report.nodeid in _PENDING and (report.when == "call" or report.failed):
        number, label = _PENDING.pop(report.nodeid)
        _CRITERIA.setdefault(number, []).append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        rows = _CRITERIA[number]
        ok = all(outcome == "passed" for _, outcome in rows)
        failed = [label for label, outcome in rows if outcome != "passed"]
        detail = f"{len(rows)} check(s)" if ok else "failed: " + "; ".join(failed)
        tr.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  ({detail})")
