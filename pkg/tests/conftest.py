from itertools import combinations
from pathlib import Path

import pytest

from pnsdag.oracle import Mode, assume_eval, available_backends
from pnsdag.recursive import INF

GOLDEN = Path(__file__).parent / "golden"


def brute_exact(g, target=None, mode=Mode.PROOF):
    """Reference exact number: plain subset enumeration over assume_eval.

    Kept deliberately naive and independent of the oracle kernels.
    """
    target = g.root if target is None else target
    leaves = sorted(n for n in g.descendants(target) if n in set(g.open_leaves()))
    want = mode is Mode.PROOF
    for s in range(len(leaves) + 1):
        for combo in combinations(leaves, s):
            if assume_eval(g, combo, mode)[target] == want:
                return s, set(combo)
    return INF, None


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


_ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Record one acceptance line; printed in the terminal summary."""

    def _record(number, title, ok, detail=""):
        _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}  {detail}".rstrip())
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
