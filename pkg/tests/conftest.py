import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Collect one status line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def add(number: int, ok: bool, text: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        lines.append(line)
        print(line)
        return ok

    return add


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
