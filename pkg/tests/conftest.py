import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = []


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.notes = []

    def note(self, text):
        self.notes.append(text)


@pytest.fixture
def criterion():
    """Time a block, record one PASS/FAIL line for it, and enforce the limit."""

    @contextmanager
    def run(number, title, limit):
        c = _Criterion(number, title, limit)
        start = time.perf_counter()
        ok = False
        try:
            yield c
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            ok = ok and elapsed < limit
            detail = "; ".join(c.notes)
            line = (
                f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  "
                f"[{elapsed:.2f} s, limit {limit:g} s]" + (f"  {detail}" if detail else "")
            )
            _criteria.append((number, line))
            print(line)
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f} s (limit {limit} s)"

    return run


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_criteria):
            terminalreporter.write_line(line)
