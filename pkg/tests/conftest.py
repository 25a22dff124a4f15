import contextlib
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one acceptance criterion as PASS or FAIL."""
    results = request.config.stash[RESULTS]

    @contextlib.contextmanager
    def run(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            first = str(exc).splitlines()[0] if str(exc) else ""
            results[number] = ("FAIL", title, f"{type(exc).__name__} {first}"[:160])
            raise
        results[number] = ("PASS", title, f"{time.perf_counter() - start:.2f}s")

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title, detail = results[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({detail})")
