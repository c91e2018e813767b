"""Core data model: k-uniform hypergraphs, assignments, degrees and values.

Hyperedges are ordered k-tuples of vertex indices.  Directed hypergraphs
keep tuples as given; undirected ones store each edge as its sorted
(canonical) tuple and merge duplicates.  A vertex may repeat inside an
edge; degrees count such incidences with multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .predicates import Predicate


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices 0..n-1.

    Invariants enforced at construction: every edge is a k-tuple of
    in-range vertices; directed graphs reject duplicate tuples; undirected
    graphs canonicalise each edge by sorting and silently merge duplicates
    (first occurrence wins the edge index).
    """

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]
    directed: bool = True

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        if self.k < 1:
            raise ValueError(f"arity must be at least 1, got {self.k}")
        canon = []
        seen: set[tuple[int, ...]] = set()
        for e in self.edges:
            t = tuple(e)
            if len(t) != self.k:
                raise ValueError(f"edge {t} has {len(t)} entries, expected {self.k}")
            for v in t:
                if not 0 <= v < self.n:
                    raise ValueError(f"vertex {v} of edge {t} out of range [0, {self.n})")
            if not self.directed:
                t = tuple(sorted(t))
                if t in seen:
                    continue
            elif t in seen:
                raise ValueError(f"duplicate directed edge {t}")
            seen.add(t)
            canon.append(t)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        """Per-vertex incidence counts; a vertex appearing t times in one
        edge contributes t."""
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)


@dataclass(frozen=True)
class Assignment:
    """A map from vertices to domain values 0..q-1, stored positionally."""

    values: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"domain size must be at least 2, got {self.q}")
        object.__setattr__(self, "values", tuple(self.values))
        for v in self.values:
            if not 0 <= v < self.q:
                raise ValueError(f"assignment value {v} out of range [0, {self.q})")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DegreeProfile:
    """Degrees plus the exact average degree k|E|/n (None when n = 0)."""

    degrees: tuple[int, ...]
    average: Fraction | None


def degree_profile(graph: Hypergraph) -> DegreeProfile:
    deg = graph.degrees()
    if graph.n == 0:
        return DegreeProfile(deg, None)
    return DegreeProfile(deg, Fraction(graph.k * graph.edge_count, graph.n))


def volume(graph: Hypergraph, vertices: Iterable[int]) -> int:
    """Sum of degrees over a vertex subset."""
    deg = graph.degrees()
    total = 0
    for v in set(vertices):
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex {v} out of range [0, {graph.n})")
        total += deg[v]
    return total


def zero_set(assignment: Assignment) -> frozenset[int]:
    """Vertices assigned the value 0."""
    return frozenset(v for v, x in enumerate(assignment.values) if x == 0)


def parts(assignment: Assignment) -> tuple[frozenset[int], ...]:
    """The q classes {v: a(v) = i} for i = 0..q-1."""
    buckets: list[list[int]] = [[] for _ in range(assignment.q)]
    for v, x in enumerate(assignment.values):
        buckets[x].append(v)
    return tuple(frozenset(b) for b in buckets)


def part_extremes(graph: Hypergraph, assignment: Assignment) -> tuple[frozenset[int], frozenset[int]]:
    """Largest part by size and largest part by volume, over values 0..q-2.

    The part of the excluded value q-1 never competes.  Ties go to the
    smallest value index.  For q = 2 both results equal the zero set.
    """
    if len(assignment) != graph.n:
        raise ValueError(f"assignment length {len(assignment)} != vertex count {graph.n}")
    deg = graph.degrees()
    classes = parts(assignment)[: assignment.q - 1]
    best_size = classes[0]
    best_vol = classes[0]
    vol_of = lambda s: sum(deg[v] for v in s)
    for part in classes[1:]:
        if len(part) > len(best_size):
            best_size = part
        if vol_of(part) > vol_of(best_vol):
            best_vol = part
    return best_size, best_vol


def value(graph: Hypergraph, predicate: "Predicate", assignment: Assignment) -> int:
    """Number of edges whose assigned value tuple satisfies the predicate.

    For undirected graphs each stored canonical edge counts once; this
    requires an order-invariant predicate and is rejected otherwise.
    """
    if predicate.k != graph.k:
        raise ValueError(f"predicate arity {predicate.k} != hypergraph arity {graph.k}")
    if predicate.q != assignment.q:
        raise ValueError(f"predicate domain {predicate.q} != assignment domain {assignment.q}")
    if len(assignment) != graph.n:
        raise ValueError(f"assignment length {len(assignment)} != vertex count {graph.n}")
    if not graph.directed and not predicate.is_symmetric():
        raise ValueError("undirected hypergraph requires an order-invariant predicate")
    a = assignment.values
    return sum(predicate.evaluate(tuple(a[v] for v in e)) for e in graph.edges)


def as_directed(graph: Hypergraph) -> Hypergraph:
    """Give every undirected edge the ascending orientation.

    Average degree, volumes and symmetric-predicate values are unchanged.
    """
    if graph.directed:
        return graph
    return Hypergraph(graph.n, graph.k, graph.edges, directed=True)


def subhypergraph(graph: Hypergraph, edge_indices: Sequence[int]) -> Hypergraph:
    """Same vertex set, edges restricted to the given indices."""
    picked = []
    for i in edge_indices:
        if not 0 <= i < graph.edge_count:
            raise ValueError(f"edge index {i} out of range [0, {graph.edge_count})")
        picked.append(graph.edges[i])
    return Hypergraph(graph.n, graph.k, tuple(picked), directed=graph.directed)
