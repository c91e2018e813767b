"""Ground-truth verification of sparsifiers.

Everything here is exact: bounds are rationals, comparisons clear
denominators and compare integers, and verdicts carry no tolerance.  The
exhaustive mode enumerates all q^n assignments (subject to a state cap);
the sampled mode draws seeded uniform assignments and is labelled as such
in its report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from . import enumeration
from .enumeration import DEFAULT_STATE_CAP
from .hypergraph import (
    Assignment,
    Hypergraph,
    degree_profile,
    part_extremes,
    subhypergraph,
    value,
    volume,
    zero_set,
)
from .predicates import Predicate

if TYPE_CHECKING:
    from .sparsifier import Sparsifier

BOOLEAN = "boolean"
ALL_BUT_ONE = "all_but_one"

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class BoundSpec:
    """Which additive error bound to check, and at which exact epsilon."""

    mode: str
    epsilon: Fraction

    def __post_init__(self) -> None:
        if self.mode not in (BOOLEAN, ALL_BUT_ONE):
            raise ValueError(f"unknown bound mode {self.mode!r}")
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    def check_domain(self, q: int) -> None:
        if self.mode == BOOLEAN and q != 2:
            raise ValueError(f"boolean mode requires domain size 2, got {q}")
        if q < 2:
            raise ValueError(f"domain size must be at least 2, got {q}")


@dataclass(frozen=True)
class CertReport:
    """Outcome of a certification sweep over assignments.

    max_margin is the largest LHS - RHS seen (positive means the bound was
    violated somewhere); witness attains it.
    """

    max_margin: Fraction
    witness: Assignment | None
    checked: int
    mode: str

    @property
    def verdict(self) -> bool:
        return self.max_margin <= 0


def error_bound(graph: Hypergraph, assignment: Assignment, spec: BoundSpec) -> Fraction:
    """Exact right-hand side of the additive bound for one assignment."""
    spec.check_domain(assignment.q)
    if len(assignment) != graph.n:
        raise ValueError(f"assignment length {len(assignment)} != vertex count {graph.n}")
    if graph.n == 0:
        return Fraction(0)
    avg = degree_profile(graph).average
    if spec.mode == BOOLEAN:
        size_set = vol_set = zero_set(assignment)
    else:
        size_set, vol_set = part_extremes(graph, assignment)
    return spec.epsilon * (avg * len(size_set) + volume(graph, vol_set))


def check_assignment(
    graph: Hypergraph,
    sparsifier: "Sparsifier",
    predicate: Predicate,
    assignment: Assignment,
    spec: BoundSpec,
) -> Fraction:
    """Margin LHS - RHS of the bound at one assignment; <= 0 means it holds.

    Evaluated through the direct edge-by-edge value, independently of the
    batched path used by certify.
    """
    _check_compat(graph, sparsifier, predicate)
    kept_graph = subhypergraph(graph, sparsifier.kept)
    lhs = abs(
        sparsifier.scale * value(kept_graph, predicate, assignment)
        - value(graph, predicate, assignment)
    )
    return lhs - error_bound(graph, assignment, spec)


def certify(
    graph: Hypergraph,
    sparsifier: "Sparsifier",
    predicate: Predicate,
    spec: BoundSpec,
    mode: str = "exhaustive",
    trials: int = 10_000,
    seed: int = 0,
    state_cap: int = DEFAULT_STATE_CAP,
) -> CertReport:
    """Maximise the bound margin over assignments for one predicate."""
    _check_compat(graph, sparsifier, predicate)
    spec.check_domain(predicate.q)
    if not graph.directed and not predicate.is_symmetric():
        raise ValueError("undirected hypergraph requires an order-invariant predicate")
    q = predicate.q
    digits, counts_full, counts_kept, sizes, vols = _enumerate(
        graph, sparsifier, q, mode, trials, seed, state_cap
    )
    table = np.asarray(predicate.table, dtype=np.int64)
    margins, denom = _margin_numerators(
        graph,
        len(sparsifier.kept),
        (counts_full @ table)[:, None],
        (counts_kept @ table)[:, None],
        sizes,
        vols,
        spec.epsilon,
    )
    flat = margins[:, 0]
    best = int(np.argmax(flat))
    witness = Assignment(tuple(int(x) for x in digits[best]), q)
    return CertReport(Fraction(int(flat[best]), denom), witness, digits.shape[0], mode)


def certify_singletons(
    graph: Hypergraph,
    sparsifier: "Sparsifier",
    q: int,
    epsilon_each: Fraction,
    mode: str = "exhaustive",
    trials: int = 10_000,
    seed: int = 0,
    state_cap: int = DEFAULT_STATE_CAP,
) -> CertReport:
    """Check every singleton predicate of domain q at once.

    The margin is maximised over all q^k singletons and all enumerated
    assignments; a pass certifies every q-ary predicate at q^k times the
    per-singleton epsilon, since any table is a 0/1 sum of singletons.
    """
    if q < 2:
        raise ValueError(f"domain size must be at least 2, got {q}")
    if not graph.directed:
        raise ValueError("singleton certification needs a directed hypergraph (orient first)")
    digits, counts_full, counts_kept, sizes, vols = _enumerate(
        graph, sparsifier, q, mode, trials, seed, state_cap
    )
    margins, denom = _margin_numerators(
        graph, len(sparsifier.kept), counts_full, counts_kept, sizes, vols, Fraction(epsilon_each)
    )
    row, _ = np.unravel_index(int(np.argmax(margins)), margins.shape)
    witness = Assignment(tuple(int(x) for x in digits[row]), q)
    return CertReport(Fraction(int(margins.max()), denom), witness, digits.shape[0], mode)


def min_feasible_epsilon(
    graph: Hypergraph,
    sparsifier: "Sparsifier",
    predicate: Predicate,
    mode: str = "exhaustive",
    spec_mode: str = ALL_BUT_ONE,
    trials: int = 10_000,
    seed: int = 0,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Fraction | None:
    """Smallest epsilon at which the bound holds everywhere, or None when no
    finite epsilon works (a zero right-hand side meets a nonzero error)."""
    _check_compat(graph, sparsifier, predicate)
    BoundSpec(spec_mode, Fraction(1)).check_domain(predicate.q)
    if not graph.directed and not predicate.is_symmetric():
        raise ValueError("undirected hypergraph requires an order-invariant predicate")
    q = predicate.q
    digits, counts_full, counts_kept, sizes, vols = _enumerate(
        graph, sparsifier, q, mode, trials, seed, state_cap
    )
    table = np.asarray(predicate.table, dtype=np.int64)
    kept_count = len(sparsifier.kept)
    edge_count = graph.edge_count
    deviation = np.abs(
        edge_count * (counts_kept @ table) - kept_count * (counts_full @ table)
    )
    rhs_scaled = _rhs_numerators(graph, sizes, vols)
    num = graph.n * deviation
    den = kept_count * rhs_scaled
    unbounded = (den == 0) & (num > 0)
    if bool(unbounded.any()):
        return None
    feasible = den > 0
    if not bool(feasible.any()):
        return Fraction(0)
    return _exact_max_ratio(num[feasible], den[feasible])


def _check_compat(graph: Hypergraph, sparsifier: "Sparsifier", predicate: Predicate) -> None:
    if predicate.k != graph.k:
        raise ValueError(f"predicate arity {predicate.k} != hypergraph arity {graph.k}")
    if sparsifier.base_edge_count != graph.edge_count:
        raise ValueError(
            f"sparsifier was built over {sparsifier.base_edge_count} edges, "
            f"hypergraph has {graph.edge_count}"
        )


def _enumerate(graph, sparsifier, q, mode, trials, seed, state_cap):
    kept_graph = subhypergraph(graph, sparsifier.kept)
    if mode == "exhaustive":
        states = q**graph.n
        if states > state_cap:
            raise ValueError(
                f"exhaustive certification needs {states} states, cap is {state_cap}; "
                "use sampled mode"
            )
        digits = enumeration.exhaustive_digits(graph.n, q)
        counts_full = enumeration.pattern_counts_cached(graph, q)
        counts_kept = enumeration.pattern_counts_cached(kept_graph, q)
        sizes, vols = enumeration.part_stats_cached(graph, q)
    elif mode == "sampled":
        digits = enumeration.sampled_digits(graph.n, q, trials, seed)
        counts_full = enumeration.pattern_counts(graph, q, digits)
        counts_kept = enumeration.pattern_counts(kept_graph, q, digits)
        sizes, vols = enumeration.part_sizes_and_volumes(graph, q, digits)
    else:
        raise ValueError(f"unknown certification mode {mode!r}")
    return digits, counts_full, counts_kept, sizes, vols


def _rhs_numerators(graph: Hypergraph, sizes: np.ndarray, vols: np.ndarray) -> np.ndarray:
    """n times the bound's parenthesised term, per assignment row."""
    q = sizes.shape[1]
    max_size = sizes[:, : q - 1].max(axis=1)
    max_vol = vols[:, : q - 1].max(axis=1)
    return graph.k * graph.edge_count * max_size + graph.n * max_vol


def _margin_numerators(graph, kept_count, val_full, val_kept, sizes, vols, epsilon):
    """Integer margin numerators over denominator s*n*|kept| (epsilon = p/s)."""
    p, s = epsilon.numerator, epsilon.denominator
    n, k, edge_count = graph.n, graph.k, graph.edge_count
    bound = max(
        s * n * edge_count * kept_count,
        p * kept_count * 2 * n * k * edge_count,
    )
    if bound >= _INT64_SAFE:  # fall back to unbounded Python ints
        val_full = val_full.astype(object)
        val_kept = val_kept.astype(object)
        sizes = sizes.astype(object)
        vols = vols.astype(object)
    deviation = np.abs(edge_count * val_kept - kept_count * val_full)
    rhs_scaled = _rhs_numerators(graph, sizes, vols)
    margins = s * n * deviation - p * kept_count * rhs_scaled[:, None]
    return margins, s * n * kept_count


def _exact_max_ratio(num: np.ndarray, den: np.ndarray) -> Fraction:
    """Exact maximum of num[i]/den[i] over rows with den > 0."""
    if int(num.max(initial=0)) * int(den.max(initial=0)) >= _INT64_SAFE:
        best = Fraction(0)
        for a, b in zip(num.tolist(), den.tolist()):
            best = max(best, Fraction(int(a), int(b)))
        return best
    with np.errstate(invalid="ignore"):
        best = int(np.argmax(num / den.astype(np.float64)))
    while True:
        better = np.flatnonzero(num * int(den[best]) > int(num[best]) * den)
        if better.size == 0:
            break
        best = int(better[np.argmax(num[better] / den[better].astype(np.float64))])
    return Fraction(int(num[best]), int(den[best]))
