import time
from contextlib import contextmanager

import pytest

_CRITERIA: list[tuple[str, bool, float, float, str]] = []


@pytest.fixture
def criterion():
    """Time a block against its budget and record one pass/fail line for it."""

    @contextmanager
    def run(label: str, budget: float):
        t0 = time.perf_counter()
        note = ""
        ok = False
        try:
            yield
            ok = True
        except BaseException as exc:
            note = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
            raise
        finally:
            elapsed = time.perf_counter() - t0
            if ok and elapsed > budget:
                ok = False
                note = "over budget"
            _CRITERIA.append((label, ok, elapsed, budget, note))
        if elapsed > budget:
            pytest.fail(f"{label}: {elapsed:.2f}s exceeds the {budget:g}s budget")

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, elapsed, budget, note in _CRITERIA:
        tag = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{tag}  {label:<48} {elapsed:7.2f}s / {budget:g}s  {note}")
