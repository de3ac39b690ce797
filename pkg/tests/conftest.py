import contextlib
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance_key = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_acceptance_key] = []


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance criterion's outcome."""
    lines = request.config.stash[_acceptance_key]

    @contextlib.contextmanager
    def record(number, title):
        start = time.perf_counter()
        detail = {}
        try:
            yield detail
        except BaseException as exc:
            lines.append((number, "FAIL", title, f"{type(exc).__name__}: {exc}"[:200],
                          time.perf_counter() - start))
            raise
        note = ", ".join(f"{k}={v}" for k, v in detail.items())
        lines.append((number, "PASS", title, note, time.perf_counter() - start))

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_acceptance_key, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, note, seconds in sorted(lines):
        terminalreporter.write_line(
            f"[{status}] {number}. {title} ({seconds:.1f}s){': ' + note if note else ''}")
