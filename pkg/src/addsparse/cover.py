"""Layered covers of directed hypergraphs and the assignment lifts that ride
on them.

The k-partite k-fold cover places k copies of the vertex set in layers and
lifts each directed edge to a single edge that visits layer i in position i.
Cover vertex (v, layer i) gets index i*n + v, so layer and base vertex stay
arithmetically recoverable.  The cover keeps a per-edge bijection with the
base graph; sparsifier pull-backs depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .hypergraph import Assignment, Hypergraph
from .predicates import Predicate, index, rep


@dataclass(frozen=True)
class Cover:
    base: Hypergraph
    lifted: Hypergraph
    edge_map: tuple[int, ...]  # cover edge index -> base edge index

    def pull_back(self, cover_indices: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.edge_map[i] for i in cover_indices))

    def push_forward(self, base_indices: Iterable[int]) -> tuple[int, ...]:
        inverse = {b: c for c, b in enumerate(self.edge_map)}
        return tuple(sorted(inverse[i] for i in base_indices))


def cover(graph: Hypergraph) -> Cover:
    """Build the k-layer cover of a directed hypergraph.

    Each base edge yields exactly one cover edge, and no two cover edges
    share a vertex set, so the recorded edge map is a bijection.
    """
    if not graph.directed:
        raise ValueError("cover requires a directed hypergraph; orient the edges first")
    n, k = graph.n, graph.k
    lifted_edges = tuple(tuple(i * n + e[i] for i in range(k)) for e in graph.edges)
    lifted = Hypergraph(k * n, k, lifted_edges, directed=True)
    return Cover(graph, lifted, tuple(range(len(lifted_edges))))


def undirected_equivalent(graph: Hypergraph) -> Hypergraph:
    """Forget edge directions, merging edges that become identical.

    Applied to a cover this never merges anything: distinct base edges give
    cover edges over distinct vertex sets.
    """
    return Hypergraph(graph.n, graph.k, graph.edges, directed=False)


def lift_uniform(assignment: Assignment, k: int) -> Assignment:
    """Copy the assignment to every layer of a k-layer cover."""
    return Assignment(tuple(assignment.values) * k, assignment.q)


def lift_subset(assignment: Assignment, k: int, subset: Iterable[int]) -> Assignment:
    """Boolean cover assignment that is 0 at (v, layer i) exactly when the
    layer lies in the subset and v is assigned 0."""
    if assignment.q != 2:
        raise ValueError("subset lift is defined for Boolean assignments")
    T = frozenset(subset)
    if any(not 0 <= t < k for t in T):
        raise ValueError(f"subset {sorted(T)} not contained in [0, {k})")
    values = []
    for layer in range(k):
        if layer in T:
            values.extend(0 if x == 0 else 1 for x in assignment.values)
        else:
            values.extend([1] * len(assignment))
    return Assignment(tuple(values), 2)


def lift_singleton(assignment: Assignment, k: int, r: int) -> Assignment:
    """Boolean cover assignment matching the singleton pattern rep(q, k, r).

    Layer i of vertex v goes to 0 when either the pattern digit there is
    below q-1 and a(v) equals it, or the digit is q-1 and a(v) is not q-1.
    Vertices assigned q-1 are never sent to 0.
    """
    q = assignment.q
    digits = rep(q, k, r)
    values = []
    for layer in range(k):
        d = digits[layer]
        for x in assignment.values:
            if d != q - 1:
                values.append(0 if x == d else 1)
            else:
                values.append(1 if x == q - 1 else 0)
    return Assignment(tuple(values), 2)


def singleton_lift_predicate(q: int, k: int, r: int) -> Predicate:
    """Boolean singleton matched by the singleton lift: true exactly on the
    pattern with 1 at layers where rep(q, k, r) carries q-1 and 0 elsewhere."""
    digits = rep(q, k, r)
    pattern = tuple(1 if d == q - 1 else 0 for d in digits)
    table = [0] * 2**k
    table[index(2, k, pattern)] = 1
    return Predicate(k, 2, tuple(table))


def odd_lift(graph: Hypergraph, predicate: Predicate | None = None) -> tuple[Hypergraph, Predicate | None]:
    """Append a fresh anchor vertex to every edge, raising the arity by one.

    Edge order is preserved, so pulling a subset of lifted edges back to the
    base is the identity on indices.  The lifted predicate fires only when
    the base predicate fires and the anchor position carries the top domain
    value; assigning that value to the anchor makes the two values agree.
    """
    anchor = graph.n
    lifted_edges = tuple(e + (anchor,) for e in graph.edges)
    lifted = Hypergraph(graph.n + 1, graph.k + 1, lifted_edges, directed=graph.directed)
    if predicate is None:
        return lifted, None
    if predicate.k != graph.k:
        raise ValueError(f"predicate arity {predicate.k} != hypergraph arity {graph.k}")
    q = predicate.q
    table = []
    for i in range(q ** (graph.k + 1)):
        digits = rep(q, graph.k + 1, i)
        fires = digits[-1] == q - 1 and predicate.evaluate(digits[:-1]) == 1
        table.append(1 if fires else 0)
    return lifted, Predicate(graph.k + 1, q, tuple(table))


def extend_with_anchor(assignment: Assignment) -> Assignment:
    """The assignment companion of odd_lift: the anchor takes the top value."""
    return Assignment(tuple(assignment.values) + (assignment.q - 1,), assignment.q)
