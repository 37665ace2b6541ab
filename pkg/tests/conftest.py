import time

import pytest

_LINES: list[str] = []


class _Criterion:
    """Times one acceptance criterion and records its pass/fail line."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.start = time.perf_counter()
        self.detail = ""
        self.ok = False
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        in_time = elapsed < self.limit
        passed = self.ok and exc_type is None and in_time
        note = self.detail
        if exc_type is not None:
            note = f"{exc_type.__name__}: {exc}"
        elif not in_time:
            note = f"{note}; over time limit".lstrip("; ")
        line = (
            f"[{'PASS' if passed else 'FAIL'}] criterion {self.number}: {self.title} "
            f"({elapsed:.2f}s / limit {self.limit:g}s) {note}"
        ).rstrip()
        _LINES.append(line)
        print(line)
        if exc_type is None:
            assert self.ok, line
            assert in_time, line
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
