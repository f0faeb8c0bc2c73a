from __future__ import annotations

import pytest

from matsys.ncpoly import preset_system, truncated_buchberger

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gb_s4():
    return truncated_buchberger(preset_system("s4"), 6)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
