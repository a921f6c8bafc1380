import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cuntzalg import kernels  # noqa: E402

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, passed: bool, detail: str = ""):
        line = f"[{'PASS' if passed else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        _ACCEPTANCE.append(line)
        print(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


BACKENDS = [kernels.python_backend] + (
    [kernels.compiled_backend] if kernels.compiled_backend is not None else []
)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param
