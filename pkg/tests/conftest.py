from __future__ import annotations

import random
import sys
from functools import lru_cache

import pytest

from dcohom.generators import builtin, lie_model
from dcohom.generators.lie import LieModel
from dcohom.generators.shapes import random_complex

BUILTINS = ("torus(1)", "torus(2)", "torus(3)", "iwasawa", "kodaira_thurston", "p1_synthetic")


@lru_cache(maxsize=None)
def named(name: str):
    obj = builtin(name)
    return lie_model(obj) if isinstance(obj, LieModel) else obj


def random_complexes(count: int, seed: int = 0, max_n: int = 3, max_dim: int = 3):
    """Seeded random complexes with n cycling through 1..max_n."""
    rng = random.Random(seed)
    for i in range(count):
        n = 1 + i % max_n
        yield random_complex(n, rng.randrange(2**31), max_dim)


@pytest.fixture(params=BUILTINS)
def builtin_complex(request):
    return named(request.param)


@pytest.fixture
def iwasawa_complex():
    return named("iwasawa")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
