import time
from contextlib import contextmanager

import pytest

_ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Time a criterion body, record one PASS/FAIL line, enforce the budget."""

    @contextmanager
    def run(number: int, title: str, budget_seconds: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE_LINES.append(
                "FAIL criterion %d (%s) after %.2f s" % (number, title, elapsed)
            )
            raise
        elapsed = time.perf_counter() - start
        if elapsed >= budget_seconds:
            _ACCEPTANCE_LINES.append(
                "FAIL criterion %d (%s): %.2f s exceeds %.0f s budget"
                % (number, title, elapsed, budget_seconds)
            )
            raise AssertionError(
                "criterion %d ran %.2f s, budget %.0f s"
                % (number, elapsed, budget_seconds)
            )
        _ACCEPTANCE_LINES.append(
            "PASS criterion %d (%s) in %.2f s (budget %.0f s)"
            % (number, title, elapsed, budget_seconds)
        )

    return run
