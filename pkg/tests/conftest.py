import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wikimap import _kernels  # noqa: E402

FIXTURE = Path(__file__).parent / "data" / "fixture"

_criteria = []


@pytest.fixture
def fixture_dir():
    return FIXTURE


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request):
    previous = _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(previous.name)


@pytest.fixture
def criterion():
    """Time a block against a budget and record one PASS/FAIL line for it."""

    @contextmanager
    def run(name, budget_s):
        start = time.perf_counter()
        ok = False
        detail = ""
        try:
            yield
            ok = True
        except BaseException as exc:
            detail = f" ({type(exc).__name__})"
            raise
        finally:
            elapsed = time.perf_counter() - start
            if ok and elapsed > budget_s:
                ok = False
                detail = " (over budget)"
            line = f"{'PASS' if ok else 'FAIL'}  {name}  {elapsed:.2f}s / {budget_s:g}s{detail}"
            _criteria.append(line)
            print(line)
        assert elapsed <= budget_s, f"{name} took {elapsed:.2f}s, budget {budget_s}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
