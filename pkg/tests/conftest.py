import random
import re

import pytest

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num, name = int(m.group(1)), m.group(2)
    failed = report.failed or (report.when == "call" and report.skipped)
    if failed:
        _outcomes[num] = ("FAIL", name)
    elif report.when == "call" and num not in _outcomes:
        _outcomes[num] = ("PASS", name)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        status, name = _outcomes[num]
        terminalreporter.write_line(f"criterion {num} {status}: {name.replace('_', ' ')}")


@pytest.fixture
def rng():
    return random.Random(20240611)
