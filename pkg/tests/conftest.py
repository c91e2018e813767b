import random
from itertools import product

import pytest

from addsparse import Assignment, BoundSpec, Hypergraph, check_assignment

# 7-vertex directed graph used as a worked example across the suite; its
# derived quantities (degrees, average 22/7, profile (2, 3, 1, 5)) are
# frozen in the tests that use it.
DEMO7_EDGES = ((0, 1), (1, 2), (0, 3), (3, 5), (3, 6), (4, 3), (3, 2), (1, 5), (1, 6), (5, 4), (6, 5))


@pytest.fixture
def demo7() -> Hypergraph:
    return Hypergraph(7, 2, DEMO7_EDGES, directed=True)


@pytest.fixture
def demo7_assignment() -> Assignment:
    return Assignment((0, 0, 0, 1, 1, 1, 1), 2)


def random_graph(rng: random.Random, n: int, k: int, m: int, directed: bool = True) -> Hypergraph:
    """Seeded random hypergraph over distinct-vertex tuples."""
    edges: set[tuple[int, ...]] = set()
    attempts = 0
    while len(edges) < m and attempts < 50 * m + 100:
        pick = tuple(rng.sample(range(n), k))
        edges.add(pick if directed else tuple(sorted(pick)))
        attempts += 1
    return Hypergraph(n, k, tuple(sorted(edges)), directed=directed)


def all_assignments(n: int, q: int):
    """Every assignment on n vertices, vertex 0 least significant."""
    for values in product(range(q), repeat=n):
        yield Assignment(tuple(reversed(values)), q)


def naive_max_margin(graph, sparsifier, predicate, spec: BoundSpec):
    """Slow reference for certify: direct per-assignment evaluation."""
    return max(
        check_assignment(graph, sparsifier, predicate, a, spec)
        for a in all_assignments(graph.n, predicate.q)
    )
