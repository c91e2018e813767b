"""Flat-file formats and random instance generation.

Hypergraph files:

    HYPERGRAPH v1
    n 7 k 2 directed
    e 0 1
    e 1 2 @cut          # optional per-edge predicate label

Predicate files:

    PREDICATE v1
    k 2 q 2
    table 0110

Assignment files:

    ASSIGN v1
    q 2
    0 1 1 0 1 0 1

Lines starting with '#' are comments.  A sparsifier file is a hypergraph
file holding the kept edges plus a '# kept <indices>' comment naming their
positions in the base instance.  Parse errors carry 1-based line numbers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, perm
from typing import Sequence

from .hypergraph import Assignment, Hypergraph
from .predicates import Predicate
from .sparsifier import Sparsifier

HYPERGRAPH_HEADER = "HYPERGRAPH v1"
PREDICATE_HEADER = "PREDICATE v1"
ASSIGNMENT_HEADER = "ASSIGN v1"

_MATERIALIZE_LIMIT = 2_000_000


class FormatError(ValueError):
    """Malformed input file; message names the offending line."""

    def __init__(self, line_no: int | None, message: str):
        self.line_no = line_no
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}{message}")


def _content_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line_no, line


def _comment_lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            yield line[1:].strip()


def parse_hypergraph_labeled(text: str) -> tuple[Hypergraph, tuple[str, ...] | None]:
    """Parse a hypergraph file, returning per-edge labels when any edge
    carries one (unlabeled edges default to the empty label)."""
    lines = _content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise FormatError(None, "empty hypergraph file") from None
    if header != HYPERGRAPH_HEADER:
        raise FormatError(line_no, f"expected header {HYPERGRAPH_HEADER!r}, got {header!r}")
    try:
        line_no, decl = next(lines)
    except StopIteration:
        raise FormatError(None, "missing 'n <n> k <k> <directed|undirected>' line") from None
    fields = decl.split()
    if len(fields) != 5 or fields[0] != "n" or fields[2] != "k" or fields[4] not in ("directed", "undirected"):
        raise FormatError(line_no, f"expected 'n <n> k <k> <directed|undirected>', got {decl!r}")
    try:
        n, k = int(fields[1]), int(fields[3])
    except ValueError:
        raise FormatError(line_no, f"non-integer n or k in {decl!r}") from None
    directed = fields[4] == "directed"

    edges: list[tuple[int, ...]] = []
    labels: list[str] = []
    seen: set[tuple[int, ...]] = set()
    any_label = False
    for line_no, line in lines:
        parts = line.split()
        if parts[0] != "e":
            raise FormatError(line_no, f"expected edge line 'e i1 ... i{k}', got {line!r}")
        label = ""
        if parts and parts[-1].startswith("@"):
            label = parts[-1][1:]
            any_label = True
            parts = parts[:-1]
        body = parts[1:]
        if len(body) != k:
            raise FormatError(line_no, f"edge has {len(body)} vertices, expected {k}")
        try:
            edge = tuple(int(x) for x in body)
        except ValueError:
            raise FormatError(line_no, f"non-integer vertex in {line!r}") from None
        for v in edge:
            if not 0 <= v < n:
                raise FormatError(line_no, f"vertex {v} out of range [0, {n})")
        canon = edge if directed else tuple(sorted(edge))
        if canon in seen:
            if directed:
                raise FormatError(line_no, f"duplicate directed edge {edge}")
            continue  # undirected duplicates merge; the first label wins
        seen.add(canon)
        edges.append(edge)
        labels.append(label)
    try:
        graph = Hypergraph(n, k, tuple(edges), directed=directed)
    except ValueError as exc:
        raise FormatError(None, str(exc)) from exc
    return graph, tuple(labels) if any_label else None


def parse_hypergraph(text: str) -> Hypergraph:
    return parse_hypergraph_labeled(text)[0]


def serialize_hypergraph(
    graph: Hypergraph,
    labels: Sequence[str] | None = None,
    comments: Sequence[str] = (),
) -> str:
    out = [HYPERGRAPH_HEADER]
    out.extend(f"# {c}" for c in comments)
    out.append(f"n {graph.n} k {graph.k} {'directed' if graph.directed else 'undirected'}")
    for i, edge in enumerate(graph.edges):
        line = "e " + " ".join(str(v) for v in edge)
        if labels is not None and labels[i]:
            line += f" @{labels[i]}"
        out.append(line)
    return "\n".join(out) + "\n"


def parse_predicate(text: str) -> Predicate:
    lines = _content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise FormatError(None, "empty predicate file") from None
    if header != PREDICATE_HEADER:
        raise FormatError(line_no, f"expected header {PREDICATE_HEADER!r}, got {header!r}")
    try:
        line_no, decl = next(lines)
    except StopIteration:
        raise FormatError(None, "missing 'k <k> q <q>' line") from None
    fields = decl.split()
    if len(fields) != 4 or fields[0] != "k" or fields[2] != "q":
        raise FormatError(line_no, f"expected 'k <k> q <q>', got {decl!r}")
    try:
        k, q = int(fields[1]), int(fields[3])
    except ValueError:
        raise FormatError(line_no, f"non-integer k or q in {decl!r}") from None
    try:
        line_no, table_line = next(lines)
    except StopIteration:
        raise FormatError(None, "missing 'table <bits>' line") from None
    parts = table_line.split()
    if len(parts) != 2 or parts[0] != "table":
        raise FormatError(line_no, f"expected 'table <bits>', got {table_line!r}")
    bits = parts[1]
    if len(bits) != q**k:
        raise FormatError(line_no, f"table has {len(bits)} entries, expected q^k = {q**k}")
    if any(c not in "01" for c in bits):
        raise FormatError(line_no, "table entries must be '0' or '1'")
    return Predicate(k, q, tuple(int(c) for c in bits))


def serialize_predicate(pred: Predicate) -> str:
    bits = "".join(str(b) for b in pred.table)
    return f"{PREDICATE_HEADER}\nk {pred.k} q {pred.q}\ntable {bits}\n"


def parse_assignment(text: str) -> Assignment:
    lines = _content_lines(text)
    try:
        line_no, header = next(lines)
    except StopIteration:
        raise FormatError(None, "empty assignment file") from None
    if header != ASSIGNMENT_HEADER:
        raise FormatError(line_no, f"expected header {ASSIGNMENT_HEADER!r}, got {header!r}")
    try:
        line_no, decl = next(lines)
    except StopIteration:
        raise FormatError(None, "missing 'q <q>' line") from None
    fields = decl.split()
    if len(fields) != 2 or fields[0] != "q":
        raise FormatError(line_no, f"expected 'q <q>', got {decl!r}")
    try:
        q = int(fields[1])
    except ValueError:
        raise FormatError(line_no, f"non-integer q in {decl!r}") from None
    try:
        line_no, values_line = next(lines)
    except StopIteration:
        raise FormatError(None, "missing assignment values line") from None
    try:
        values = tuple(int(x) for x in values_line.split())
    except ValueError:
        raise FormatError(line_no, f"non-integer value in {values_line!r}") from None
    for v in values:
        if not 0 <= v < q:
            raise FormatError(line_no, f"value {v} out of range [0, {q})")
    return Assignment(values, q)


def serialize_assignment(assignment: Assignment) -> str:
    values = " ".join(str(v) for v in assignment.values)
    return f"{ASSIGNMENT_HEADER}\nq {assignment.q}\n{values}\n"


def serialize_sparsifier(graph: Hypergraph, sparsifier: Sparsifier) -> str:
    """Kept-edge subhypergraph with a comment naming the kept base indices."""
    kept_edges = tuple(graph.edges[i] for i in sparsifier.kept)
    sub = Hypergraph(graph.n, graph.k, kept_edges, directed=graph.directed)
    comment = "kept " + " ".join(str(i) for i in sparsifier.kept)
    return serialize_hypergraph(sub, comments=(comment,))


def parse_sparsifier(text: str, base: Hypergraph, epsilon: Fraction) -> Sparsifier:
    """Read a sparsifier file back against its base instance."""
    sub = parse_hypergraph(text)
    kept: tuple[int, ...] | None = None
    for comment in _comment_lines(text):
        if comment.startswith("kept"):
            try:
                kept = tuple(int(x) for x in comment.split()[1:])
            except ValueError:
                raise FormatError(None, f"malformed kept comment {comment!r}") from None
            break
    if kept is None:
        raise FormatError(None, "sparsifier file lacks a '# kept <indices>' comment")
    if sub.n != base.n or sub.k != base.k:
        raise FormatError(None, "sparsifier file does not match the base instance shape")
    if len(kept) != sub.edge_count:
        raise FormatError(None, f"kept list has {len(kept)} indices for {sub.edge_count} edges")
    for pos, i in enumerate(kept):
        if not 0 <= i < base.edge_count:
            raise FormatError(None, f"kept index {i} out of range [0, {base.edge_count})")
        if base.edges[i] != sub.edges[pos]:
            raise FormatError(
                None, f"kept index {i} names edge {base.edges[i]}, file has {sub.edges[pos]}"
            )
    return Sparsifier(base.edge_count, kept, Fraction(base.edge_count, len(kept)), Fraction(epsilon))


def generate(n: int, k: int, m: int, seed: int = 0, directed: bool = True) -> Hypergraph:
    """Seed-deterministic random hypergraph: m distinct edges drawn uniformly
    from the k-tuples (or k-sets) of distinct vertices."""
    if k < 1 or n < k:
        raise ValueError(f"need 1 <= k <= n, got n={n} k={k}")
    available = perm(n, k) if directed else comb(n, k)
    if m > available:
        raise ValueError(f"requested {m} edges but only {available} distinct edges exist")
    rng = random.Random(seed)
    if available <= _MATERIALIZE_LIMIT:
        population = list(permutations(range(n), k)) if directed else list(combinations(range(n), k))
        edges = sorted(rng.sample(population, m))
    else:
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < m:
            pick = rng.sample(range(n), k)
            chosen.add(tuple(pick) if directed else tuple(sorted(pick)))
        edges = sorted(chosen)
    return Hypergraph(n, k, tuple(edges), directed=directed)
