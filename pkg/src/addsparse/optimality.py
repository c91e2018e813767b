"""Why the error bound must see all but one value class.

A hypothetical tighter bound whose error term ignores the two top value
classes is forced to a right-hand side of 0 by assignments supported on
those two values.  On a complete graph with the inequality predicate, every
proper nonempty subgraph then admits such an assignment on which the
rescaled subgraph value misses the true value, so no subgraph at all can
satisfy the tighter definition.  This module makes that argument executable:
it walks proper subgraphs of K_n and produces a concrete violating
assignment for each.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .hypergraph import Assignment, Hypergraph, subhypergraph, value
from .predicates import cut_predicate

EXHAUSTIVE_LIMIT = 5  # complete graphs up to this n enumerate all subgraphs
DEFAULT_SAMPLES = 10_000


@dataclass(frozen=True)
class SubgraphWitness:
    """One examined subgraph and the assignment that defeats the zero bound.

    The assignment uses only the two top domain values, so any error term
    ignoring those classes is 0 while the deviation is strictly positive.
    """

    kept: tuple[int, ...]
    case: str  # "regular" | "irregular"
    assignment: Assignment
    deviation: Fraction

    @property
    def violated(self) -> bool:
        return self.deviation > 0


@dataclass(frozen=True)
class OptimalityReport:
    n: int
    q: int
    mode: str  # "exhaustive" | "sampled"
    examined: int
    witnesses: tuple[SubgraphWitness, ...]

    @property
    def all_violated(self) -> bool:
        return all(w.violated for w in self.witnesses)


def complete_graph(n: int) -> Hypergraph:
    return Hypergraph(n, 2, tuple(combinations(range(n), 2)), directed=False)


def _two_value_assignment(n: int, q: int, low_vertices: tuple[int, ...]) -> Assignment:
    values = [q - 1] * n
    for v in low_vertices:
        values[v] = q - 2
    return Assignment(tuple(values), q)


def _witness(base: Hypergraph, kept: tuple[int, ...], q: int) -> SubgraphWitness:
    """A violating q-2/q-1 assignment for one proper nonempty subgraph."""
    cut = cut_predicate(2, q)
    sub = subhypergraph(base, kept)
    scale = Fraction(base.edge_count, len(kept))
    degrees = sub.degrees()

    def deviation(assignment: Assignment) -> Fraction:
        return abs(scale * value(sub, cut, assignment) - value(base, cut, assignment))

    if len(set(degrees)) == 1:
        # Regular subgraph: mark any two vertices with the second value.
        assignment = _two_value_assignment(base.n, q, (0, 1))
        return SubgraphWitness(kept, "regular", assignment, deviation(assignment))
    # Two vertices of different degree: at most one of their singleton
    # assignments can match the scale, so the other one violates.
    pair = next(
        (i, j)
        for i in range(base.n)
        for j in range(i + 1, base.n)
        if degrees[i] != degrees[j]
    )
    best: SubgraphWitness | None = None
    for v in pair:
        assignment = _two_value_assignment(base.n, q, (v,))
        candidate = SubgraphWitness(kept, "irregular", assignment, deviation(assignment))
        if candidate.violated:
            return candidate
        best = candidate
    return best  # unreachable for proper subgraphs; kept for honesty


def optimality_counterexample(
    n: int,
    q: int,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> OptimalityReport:
    """Demonstrate on K_n that no proper subgraph survives the zero bound.

    Enumerates every proper nonempty edge subset for n up to the exhaustive
    limit; beyond that, examines a seeded sample of subsets.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if q < 3:
        raise ValueError(f"need q >= 3 so that two values can be ignored, got {q}")
    base = complete_graph(n)
    edge_count = base.edge_count
    witnesses = []
    if n <= exhaustive_limit:
        mode = "exhaustive"
        masks = range(1, 2**edge_count - 1)
    else:
        mode = "sampled"
        rng = random.Random(seed)
        masks = (rng.randrange(1, 2**edge_count - 1) for _ in range(samples))
    for mask in masks:
        kept = tuple(i for i in range(edge_count) if mask >> i & 1)
        witnesses.append(_witness(base, kept, q))
    return OptimalityReport(n, q, mode, len(witnesses), tuple(witnesses))
