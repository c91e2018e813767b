"""Batch evaluation over assignment space.

Assignments are enumerated as base-q counters with vertex 0 least
significant, one row per assignment.  Pattern counts, part sizes and part
volumes come out as integer arrays; all downstream bound checks clear
denominators and compare integers, so the arrays must stay exact.  Array
dtypes are int64 with explicit magnitude guards at the call sites that
multiply them.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .hypergraph import Hypergraph

# Hard ceiling on enumerated states (q^n) for exhaustive work.
DEFAULT_STATE_CAP = 1 << 20


@lru_cache(maxsize=16)
def exhaustive_digits(n: int, q: int) -> np.ndarray:
    """(q^n, n) array of assignment digits; row A has digit (A // q^v) % q
    at vertex v."""
    count = q**n
    ids = np.arange(count, dtype=np.int64)
    digits = np.empty((count, n), dtype=np.int8)
    for v in range(n):
        digits[:, v] = (ids // q**v) % q
    digits.flags.writeable = False
    return digits


def sampled_digits(n: int, q: int, trials: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    digits = rng.integers(0, q, size=(trials, n), dtype=np.int8)
    digits.flags.writeable = False
    return digits


@lru_cache(maxsize=16)
def _pattern_counts_exhaustive(graph: Hypergraph, q: int) -> np.ndarray:
    digits = exhaustive_digits(graph.n, q)
    counts = pattern_counts(graph, q, digits)
    counts.flags.writeable = False
    return counts


def pattern_counts(graph: Hypergraph, q: int, digits: np.ndarray) -> np.ndarray:
    """(rows, q^k) matrix counting edges per value pattern per assignment.

    Row dotted with a predicate table gives that predicate's value under
    the row's assignment.  One edge contributes one pattern per row, so the
    scatter-add below never collides within an edge.
    """
    rows = digits.shape[0]
    counts = np.zeros((rows, q**graph.k), dtype=np.int64)
    row_ids = np.arange(rows)
    pattern = np.empty(rows, dtype=np.int64)
    for edge in graph.edges:
        pattern[:] = 0
        for v in edge:
            pattern *= q
            pattern += digits[:, v]
        counts[row_ids, pattern] += 1
    return counts


def pattern_counts_cached(graph: Hypergraph, q: int) -> np.ndarray:
    """Exhaustive pattern counts, memoised per (graph, q)."""
    return _pattern_counts_exhaustive(graph, q)


def part_sizes_and_volumes(graph: Hypergraph, q: int, digits: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-assignment sizes and volumes of the q value classes.

    Returns (sizes, volumes), each (rows, q).
    """
    degrees = np.asarray(graph.degrees(), dtype=np.int64)
    rows = digits.shape[0]
    sizes = np.empty((rows, q), dtype=np.int64)
    volumes = np.empty((rows, q), dtype=np.int64)
    for val in range(q):
        mask = digits == val
        sizes[:, val] = mask.sum(axis=1)
        volumes[:, val] = mask @ degrees
    return sizes, volumes


@lru_cache(maxsize=32)
def part_stats_cached(graph: Hypergraph, q: int) -> tuple[np.ndarray, np.ndarray]:
    digits = exhaustive_digits(graph.n, q)
    sizes, volumes = part_sizes_and_volumes(graph, q, digits)
    sizes.flags.writeable = False
    volumes.flags.writeable = False
    return sizes, volumes
