import functools

import pytest

from troppatch.io import parse_input

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def load(name: str, validate: bool = True):
    return parse_input(name, validate)


@pytest.fixture
def corpus():
    return load


@pytest.fixture
def record():
    """Register one pass/fail line for the acceptance summary."""

    def _record(criterion: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
