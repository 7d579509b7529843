import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from superdescent.algebra import builtin_algebra  # noqa: E402
from superdescent.field_tower import build_tower  # noqa: E402

SPECS = os.path.join(os.path.dirname(os.path.dirname(__file__)), "specs")


@lru_cache(maxsize=None)
def make_algebra(family, param, p, levels, d=1):
    """Shared, cached algebras; levels is a tuple."""
    return builtin_algebra(family, [param], build_tower(p, d, list(levels)))


@pytest.fixture(scope="session")
def ut3_q2():
    return make_algebra("ut", 3, 2, (1, 2))


@pytest.fixture(scope="session")
def ut3_q3():
    return make_algebra("ut", 3, 3, (1,))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
