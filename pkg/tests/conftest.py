import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from kfs import Graph, from_edges

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def atlas_path() -> Path:
    return FIXTURES / "atlas_upto7.g6"


@pytest.fixture(scope="session")
def atlas_graphs(atlas_path):
    """Every (nonempty) non-isomorphic graph on up to 7 vertices, decoded
    through the package codec from a networkx-encoded fixture."""
    from kfs import decode

    return [decode(line) for line in atlas_path.read_text().splitlines()]


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return from_edges(10, outer + inner + spokes)


@pytest.fixture
def c5() -> Graph:
    return from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


@pytest.fixture
def k33() -> Graph:
    return from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])


def random_graph_pairs(seed: int, count: int, n_lo=4, n_hi=12):
    """Seeded (Graph, numpy adjacency) pairs shared by several suites."""
    from kfs import random_graph

    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(0.1, 0.9))
        out.append(random_graph(n, p, rng))
    return out
