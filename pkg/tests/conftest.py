import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flatgame.game import BUILTIN_NAMES, builtin, make_game

settings.register_profile(
    "default", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def games(draw, max_size=4, lo=-3, hi=3):
    m = draw(st.integers(1, max_size))
    n = draw(st.integers(1, max_size))
    vals = st.integers(lo, hi)
    p1 = [[draw(vals) for _ in range(n)] for _ in range(m)]
    p2 = [[draw(vals) for _ in range(n)] for _ in range(m)]
    return make_game(p1, p2, "drawn")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def small_builtins():
    return [builtin(name) for name in BUILTIN_NAMES if name != "traveler"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, line = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {line}")
