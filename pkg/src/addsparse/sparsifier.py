"""Randomised, certified sparsification.

The sampler proposes a subset of edges under a size budget; the verifier
decides whether the additive bound really holds.  Certification retries
with fresh seeds until it passes or a retry limit runs out, so a returned
certified sparsifier is correct by construction and only the running time
is random.

The predicate-independent pipeline routes through the layered cover: orient
edges if needed, raise odd arity by one with an anchor vertex, build the
cover, forget directions, cut-sample, and pull the kept edges back through
the recorded bijections.  One kept set then serves every predicate of the
instance's arity, which is exactly what the certification step checks (all
singleton predicates at a tightened epsilon).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import verify
from .cover import cover, odd_lift, undirected_equivalent
from .enumeration import DEFAULT_STATE_CAP
from .hypergraph import Hypergraph, as_directed
from .predicates import cut_predicate

STRATEGIES = ("uniform", "degree")
DEFAULT_CONSTANT = Fraction(4)
DEFAULT_RETRY_LIMIT = 64


class CertificationError(RuntimeError):
    """Raised when no sampled candidate passed certification within the
    retry limit."""

    def __init__(self, attempts: int, last_report: verify.CertReport | None):
        self.attempts = attempts
        self.last_report = last_report
        margin = None if last_report is None else last_report.max_margin
        super().__init__(
            f"certification failed after {attempts} attempts (last margin {margin})"
        )


@dataclass(frozen=True)
class SizeBudget:
    """Edge budget m_target = min(|E|, ceil(C * n * eps^-2 * ln(max(e, 1/eps))))."""

    constant: Fraction
    m_target: int

    @classmethod
    def for_instance(cls, edge_count: int, n: int, epsilon: Fraction, constant: Fraction | int | str) -> "SizeBudget":
        c = Fraction(constant)
        if c <= 0:
            raise ValueError(f"budget constant must be positive, got {c}")
        inv = 1 / Fraction(epsilon)
        raw = float(c) * n * float(inv) ** 2 * math.log(max(math.e, float(inv)))
        target = max(1, math.ceil(raw))
        return cls(c, min(edge_count, target) if edge_count >= 1 else target)


@dataclass(frozen=True)
class Sparsifier:
    """A kept-edge subset with its exact rescaling factor.

    kept holds sorted base edge indices; scale * |kept| equals the base
    edge count exactly.  certified, when present, records the sweep that
    accepted this subset.
    """

    base_edge_count: int
    kept: tuple[int, ...]
    scale: Fraction
    epsilon: Fraction
    attempts: int = 1
    certified: verify.CertReport | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kept", tuple(self.kept))
        if self.base_edge_count > 0 and not self.kept:
            raise ValueError("kept edge set must be nonempty")
        prev = -1
        for i in self.kept:
            if not 0 <= i < self.base_edge_count:
                raise ValueError(f"kept index {i} out of range [0, {self.base_edge_count})")
            if i <= prev:
                raise ValueError("kept indices must be strictly increasing")
            prev = i
        if self.kept and self.scale * len(self.kept) != self.base_edge_count:
            raise ValueError(
                f"scale {self.scale} * {len(self.kept)} != base edge count {self.base_edge_count}"
            )


def parse_epsilon(text: str | Fraction) -> Fraction:
    """Exact epsilon from a fraction or finite-decimal string, in (0, 1)."""
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse epsilon {text!r} as an exact fraction") from exc
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def multi_predicate_epsilon(epsilon: Fraction | str, k: int, q: int) -> Fraction:
    """Per-singleton epsilon so that one kept set serves every q-ary
    predicate of arity k: any table is a 0/1 sum of at most q^k singletons."""
    if k < 1 or q < 2:
        raise ValueError(f"need k >= 1 and q >= 2, got k={k} q={q}")
    return Fraction(epsilon) / q**k


def _edge_weights(graph: Hypergraph) -> list[Fraction]:
    deg = graph.degrees()
    return [sum((Fraction(1, deg[v]) for v in e), Fraction(0)) for e in graph.edges]


def sample_edges(graph: Hypergraph, m_target: int, rng: random.Random, strategy: str) -> tuple[int, ...]:
    """Draw a kept-edge index set of (expected) size m_target."""
    edge_count = graph.edge_count
    if m_target >= edge_count:
        return tuple(range(edge_count))
    if strategy == "uniform":
        return tuple(sorted(rng.sample(range(edge_count), m_target)))
    if strategy == "degree":
        weights = _edge_weights(graph)
        total = sum(weights)
        kept = []
        for i, w in enumerate(weights):
            p = min(Fraction(1), m_target * w / total) if total > 0 else Fraction(0)
            if rng.random() < float(p):
                kept.append(i)
        if not kept:
            kept = [max(range(edge_count), key=lambda i: (weights[i], -i))]
        return tuple(kept)
    raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def cut_sparsify(
    graph: Hypergraph,
    epsilon: Fraction | str,
    seed: int = 0,
    strategy: str = "uniform",
    certify: bool = False,
    constant: Fraction | int | str = DEFAULT_CONSTANT,
    retry_limit: int = DEFAULT_RETRY_LIMIT,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Sparsifier:
    """Sample-and-certify cut sparsifier of the given hypergraph.

    With certify set, the returned subset satisfies the additive cut bound
    for all 2^n Boolean assignments of this graph; candidates failing the
    exhaustive check are resampled with fresh seeds up to the retry limit.
    """
    eps = parse_epsilon(epsilon)
    if graph.edge_count < 1:
        raise ValueError("cut sparsification needs at least one edge")
    budget = SizeBudget.for_instance(graph.edge_count, graph.n, eps, constant)
    cut = cut_predicate(graph.k, 2)
    spec = verify.BoundSpec(verify.BOOLEAN, eps)
    last_report: verify.CertReport | None = None
    for attempt in range(1, retry_limit + 1):
        kept = sample_edges(graph, budget.m_target, random.Random(seed + attempt - 1), strategy)
        candidate = Sparsifier(
            graph.edge_count, kept, Fraction(graph.edge_count, len(kept)), eps, attempts=attempt
        )
        if not certify:
            return candidate
        last_report = verify.certify(graph, candidate, cut, spec, "exhaustive", state_cap=state_cap)
        if last_report.verdict:
            return replace(candidate, certified=last_report)
    raise CertificationError(retry_limit, last_report)


def sparsify(
    graph: Hypergraph,
    epsilon: Fraction | str,
    seed: int = 0,
    strategy: str = "uniform",
    certify: str = "off",
    domains: Sequence[int] = (2,),
    constant: Fraction | int | str = DEFAULT_CONSTANT,
    retry_limit: int = DEFAULT_RETRY_LIMIT,
    trials: int = 10_000,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Sparsifier:
    """Predicate-independent sparsifier of a k-uniform hypergraph.

    The kept set is sampled through the cover route and certified (unless
    certify is "off") by checking every singleton predicate of each listed
    domain size at epsilon / q^k on the base instance, which implies the
    additive bound at epsilon for every predicate over those domains.
    """
    eps = parse_epsilon(epsilon)
    if graph.edge_count < 1:
        raise ValueError("sparsification needs at least one edge")
    if certify not in ("off", "exhaustive", "sample"):
        raise ValueError(f"unknown certify mode {certify!r}")
    domains = tuple(sorted(set(int(q) for q in domains)))
    if not domains or any(q < 2 for q in domains):
        raise ValueError(f"domains must be sizes >= 2, got {domains}")

    base = as_directed(graph)
    work = base
    eps_cut = min(multi_predicate_epsilon(eps, graph.k, q) for q in domains)
    if work.k % 2 == 1:
        eps_cut *= Fraction(work.k, work.k + 1)
        work, _ = odd_lift(work)
    layered = cover(work)
    flat = undirected_equivalent(layered.lifted)
    if flat.edge_count != layered.lifted.edge_count:  # cover edges never merge
        raise AssertionError("cover produced colliding edge sets")
    budget = SizeBudget.for_instance(flat.edge_count, flat.n, eps_cut, constant)

    verify_mode = "exhaustive" if certify == "exhaustive" else "sampled"
    last_report: verify.CertReport | None = None
    for attempt in range(1, retry_limit + 1):
        kept_cover = sample_edges(flat, budget.m_target, random.Random(seed + attempt - 1), strategy)
        kept = layered.pull_back(kept_cover)
        candidate = Sparsifier(
            graph.edge_count, kept, Fraction(graph.edge_count, len(kept)), eps, attempts=attempt
        )
        if certify == "off":
            return candidate
        reports = []
        for q in domains:
            report = verify.certify_singletons(
                base,
                candidate,
                q,
                multi_predicate_epsilon(eps, graph.k, q),
                mode=verify_mode,
                trials=trials,
                seed=seed + attempt - 1,
                state_cap=state_cap,
            )
            reports.append(report)
            if not report.verdict:
                break
        last_report = max(reports, key=lambda r: r.max_margin)
        if last_report.verdict:
            return replace(candidate, certified=last_report)
    raise CertificationError(retry_limit, last_report)


def sparsify_per_label(
    graph: Hypergraph,
    labels: Sequence[str],
    epsilon: Fraction | str,
    **kwargs,
) -> tuple[Sparsifier, dict[str, Sparsifier]]:
    """Sparsify an instance whose edges carry individual predicate labels.

    Edges are grouped by label, each group is sparsified at epsilon divided
    by the number of distinct labels, and the kept sets are unioned.  The
    union sparsifier is returned uncertified (its parts are certified
    within their own groups, each with its own scale).
    """
    if len(labels) != graph.edge_count:
        raise ValueError(f"got {len(labels)} labels for {graph.edge_count} edges")
    eps = parse_epsilon(epsilon)
    groups: dict[str, list[int]] = {}
    for i, name in enumerate(labels):
        groups.setdefault(name, []).append(i)
    eps_each = eps / len(groups)
    union: list[int] = []
    parts: dict[str, Sparsifier] = {}
    for name in sorted(groups):
        indices = groups[name]
        sub = Hypergraph(
            graph.n, graph.k, tuple(graph.edges[i] for i in indices), directed=graph.directed
        )
        part = sparsify(sub, eps_each, **kwargs)
        parts[name] = part
        union.extend(indices[i] for i in part.kept)
    union_sorted = tuple(sorted(union))
    attempts = max(p.attempts for p in parts.values())
    return (
        Sparsifier(
            graph.edge_count,
            union_sorted,
            Fraction(graph.edge_count, len(union_sorted)),
            eps,
            attempts=attempts,
        ),
        parts,
    )
