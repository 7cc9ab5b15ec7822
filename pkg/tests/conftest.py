from __future__ import annotations

import numpy as np
import pytest

from kuramoto_ideal.graphs import Graph, is_sct


def random_sct(rng: np.random.Generator, n: int, p: float = 0.45) -> Graph:
    """Rejection-sample an SCT graph from G(n, p)."""
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph.from_edges(edges, n=n)
        if is_sct(g):
            return g


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def sct8() -> list[Graph]:
    r = np.random.default_rng(8)
    return [random_sct(r, 8) for _ in range(100)]
