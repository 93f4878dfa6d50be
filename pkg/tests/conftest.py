import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


def separated_nodes(rng: np.random.Generator, count: int, gap: float = 0.15) -> list[float]:
    """Draw ``count`` nodes in [0, pi) pairwise at least ``gap`` apart modulo pi."""
    while True:
        b = rng.uniform(0, math.pi, count)
        if count < 2:
            return list(b)
        diff = np.abs(np.sin(b[:, None] - b[None, :]))
        if diff[np.triu_indices(count, 1)].min() >= math.sin(gap):
            return list(b)


@st.composite
def node_vectors(draw, min_size=1, max_size=5, gap=0.15):
    """Hypothesis strategy for well-separated node vectors."""
    count = draw(st.integers(min_size, max_size))
    seed = draw(st.integers(0, 2**32 - 1))
    return separated_nodes(np.random.default_rng(seed), count, gap)


phases = st.lists(st.floats(0, math.pi, allow_nan=False), min_size=0, max_size=6)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def points():
    """Off-axis evaluation points kept well away from the real line."""
    r = np.random.default_rng(5)
    return r.uniform(-math.pi, math.pi, 24) + 1j * r.choice([-1, 1], 24) * r.uniform(0.4, 1.5, 24)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
