from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from smallcuts.graph import Graph

ACCEPTANCE_LOG: list[str] = []


def random_graph(n: int, seed: int, lo: int = 1, hi: int = 255) -> Graph:
    rng = np.random.default_rng(seed)
    w = np.triu(rng.integers(lo, hi + 1, size=(n, n)), 1).astype(float)
    return Graph(w + w.T)


def unit_graph(n: int) -> Graph:
    return Graph(np.ones((n, n)) - np.eye(n))


PLANTED_MASK = 0b00000110


def planted_k8(seed: int, mask: int = PLANTED_MASK, cost: int = 10) -> Graph:
    """Heavy K8 (weights 100..255) whose cut ``mask`` is rewired to total weight ``cost``."""
    rng = np.random.default_rng(seed)
    w = np.triu(rng.integers(100, 256, (8, 8)), 1).astype(float)
    w = w + w.T
    side = (mask >> np.arange(8)) & 1
    pairs = [(i, j) for i, j in combinations(range(8), 2) if side[i] != side[j]]
    for (i, j), v in zip(pairs, rng.multinomial(cost, [1 / len(pairs)] * len(pairs))):
        w[i, j] = w[j, i] = v
    return Graph(w)


@pytest.fixture
def k3() -> Graph:
    # w(0,1)=1, w(0,2)=2, w(1,2)=3
    return Graph.from_edges(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])


@pytest.fixture
def k4() -> Graph:
    return unit_graph(4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
