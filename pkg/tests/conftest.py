import time
from contextlib import contextmanager

import pytest


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Time a block against its budget and record one pass/fail line."""

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            status = "PASS" if ok and elapsed < limit else "FAIL"
            line = f"criterion {number:2d}: {status}  {elapsed:6.2f}s / {limit}s  {title}"
            request.config.acceptance_lines.append(line)
            print(line)
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, budget {limit}s"

    return run
