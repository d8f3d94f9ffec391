from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rp2b.cosets import cayley_from, todd_coxeter  # noqa: E402
from rp2b.presentation import van_buskirk_presentation  # noqa: E402


@pytest.fixture(scope="session")
def cayley2():
    return cayley_from(todd_coxeter(van_buskirk_presentation(2)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
