import time
from contextlib import contextmanager

import pytest

_RESULTS = []


class _Criterion:
    def __init__(self):
        self.notes = []

    def note(self, text):
        self.notes.append(str(text))


@contextmanager
def _criterion(number, name, limit=None):
    """Time a block; it passes if nothing raised and it finished under ``limit`` seconds."""
    c = _Criterion()
    start = time.perf_counter()
    ok = False
    try:
        yield c
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        _RESULTS.append((number, name, ok and within, elapsed, limit, c.notes))
    if not within:
        pytest.fail(f"criterion {number} took {elapsed:.1f} s, limit {limit} s")


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, elapsed, limit, notes in sorted(_RESULTS, key=lambda r: r[0]):
        budget = "" if limit is None else f" (limit {limit:g} s)"
        extra = f" [{'; '.join(notes)}]" if notes else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {name}, "
                                    f"{elapsed:.2f} s{budget}{extra}")
