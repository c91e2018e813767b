"""Truth-table algebra for k-ary predicates over a finite domain.

A predicate of arity k over domain {0..q-1} is a dense table of q^k bits
indexed by the base-q encoding of the value tuple (first coordinate most
significant).  The module also provides the indicator-vector family u_T,
the +-1/2 coefficients that expand standard basis vectors in that family,
and the exact reconstruction of those basis vectors.  All identities here
are exact integer statements; nothing is checked with a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Assignment, Hypergraph

# Dense tables only; beyond this the representation itself is the problem.
MAX_TABLE_SIZE = 1 << 24


def rep(q: int, k: int, i: int) -> tuple[int, ...]:
    """Base-q digits of i as a k-tuple, most significant digit first."""
    if q < 2 or k < 1:
        raise ValueError(f"need q >= 2 and k >= 1, got q={q} k={k}")
    if not 0 <= i < q**k:
        raise ValueError(f"index {i} out of range [0, {q**k})")
    digits = []
    for _ in range(k):
        digits.append(i % q)
        i //= q
    return tuple(reversed(digits))


def index(q: int, k: int, digits: Sequence[int]) -> int:
    """Inverse of rep: fold k base-q digits back into an integer."""
    if len(digits) != k:
        raise ValueError(f"expected {k} digits, got {len(digits)}")
    acc = 0
    for d in digits:
        if not 0 <= d < q:
            raise ValueError(f"digit {d} out of range [0, {q})")
        acc = acc * q + d
    return acc


def zeros(k: int, i: int) -> frozenset[int]:
    """Positions of the zero bits in the k-bit encoding of i."""
    if not 0 <= i < 2**k:
        raise ValueError(f"index {i} out of range [0, {2**k})")
    bits = rep(2, k, i)
    return frozenset(pos for pos, b in enumerate(bits) if b == 0)


@dataclass(frozen=True)
class Predicate:
    """A k-ary predicate over {0..q-1} as a dense 0/1 truth table.

    table[i] is the predicate's value on the tuple rep(q, k, i); read as a
    vector, the table is the predicate's indicator in R^{q^k}.
    """

    k: int
    q: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1 or self.q < 2:
            raise ValueError(f"need k >= 1 and q >= 2, got k={self.k} q={self.q}")
        size = self.q**self.k
        if size > MAX_TABLE_SIZE:
            raise ValueError(f"table size q^k = {size} exceeds cap {MAX_TABLE_SIZE}")
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != size:
            raise ValueError(f"table length {len(self.table)} != q^k = {size}")
        if any(b not in (0, 1) for b in self.table):
            raise ValueError("table entries must be 0 or 1")

    def evaluate(self, values: Sequence[int]) -> int:
        return self.table[index(self.q, self.k, values)]

    def is_symmetric(self) -> bool:
        return _is_symmetric(self)


@lru_cache(maxsize=256)
def _is_symmetric(pred: Predicate) -> bool:
    # Order invariance holds iff the table is constant on sorted-tuple classes.
    for i, bit in enumerate(pred.table):
        canon = index(pred.q, pred.k, tuple(sorted(rep(pred.q, pred.k, i))))
        if bit != pred.table[canon]:
            return False
    return True


def cut_predicate(k: int, q: int = 2) -> Predicate:
    """1 exactly when not all k values are equal."""
    if k < 2:
        raise ValueError(f"cut needs arity >= 2, got {k}")
    table = tuple(0 if len(set(rep(q, k, i))) == 1 else 1 for i in range(q**k))
    return Predicate(k, q, table)


def uncut_predicate(k: int, q: int = 2) -> Predicate:
    """1 exactly when all k values are equal (the complement of cut)."""
    return complement(cut_predicate(k, q))


def dicut_predicate(q: int = 2) -> Predicate:
    """Binary: 1 on (0, y) with y = 1 only."""
    table = tuple(1 if rep(q, 2, i) == (0, 1) else 0 for i in range(q**2))
    return Predicate(2, q, table)


def covered_predicate(q: int = 2) -> Predicate:
    """Binary: 1 when either endpoint carries the value 1."""
    table = tuple(1 if 1 in rep(q, 2, i) else 0 for i in range(q**2))
    return Predicate(2, q, table)


def builtin_predicate(name: str, k: int, q: int = 2) -> Predicate:
    """Resolve a named predicate; 'dicut' and 'cover' are binary only."""
    if name == "cut":
        return cut_predicate(k, q)
    if name == "uncut":
        return uncut_predicate(k, q)
    if name == "dicut":
        if k != 2:
            raise ValueError("dicut is a binary predicate")
        return dicut_predicate(q)
    if name == "cover":
        if k != 2:
            raise ValueError("cover is a binary predicate")
        return covered_predicate(q)
    raise ValueError(f"unknown builtin predicate {name!r}")


BUILTIN_NAMES = ("cut", "uncut", "dicut", "cover")


def complement(pred: Predicate) -> Predicate:
    return Predicate(pred.k, pred.q, tuple(1 - b for b in pred.table))


def profile_vector(graph: Hypergraph, assignment: Assignment) -> tuple[int, ...]:
    """Count edges per assigned value pattern.

    Entry i counts edges whose tuple of assigned values encodes to i, so the
    entries sum to |E| and the value of any predicate P is the inner product
    of P's table with this vector.
    """
    if len(assignment) != graph.n:
        raise ValueError(f"assignment length {len(assignment)} != vertex count {graph.n}")
    q = assignment.q
    counts = [0] * q**graph.k
    a = assignment.values
    for e in graph.edges:
        counts[index(q, graph.k, tuple(a[v] for v in e))] += 1
    return tuple(counts)


def u_vector(k: int, subset: Iterable[int]) -> tuple[int, ...]:
    """Indicator in R^{2^k} of patterns with a zero at some position of the
    subset, except that the all-zero pattern is excluded when the subset is
    all of [k]."""
    T = frozenset(subset)
    if any(not 0 <= t < k for t in T):
        raise ValueError(f"subset {sorted(T)} not contained in [0, {k})")
    full = frozenset(range(k))
    out = []
    for j in range(2**k):
        inter = T & zeros(k, j)
        out.append(1 if inter and inter != full else 0)
    return tuple(out)


def u_predicate(k: int, subset: Iterable[int]) -> Predicate:
    """The Boolean predicate whose truth table is u_vector(k, subset)."""
    return Predicate(k, 2, u_vector(k, subset))


def lambda_coeff(k: int, r: int, m: int) -> Fraction:
    """The +-1/2 expansion coefficient of basis vector r against the m-th
    member of the u family (ordered by T_m = zeros(m))."""
    if not 0 <= r < 2**k:
        raise ValueError(f"r = {r} out of range [0, {2**k})")
    if not 0 <= m < 2**k:
        raise ValueError(f"m = {m} out of range [0, {2**k})")
    ham = (r ^ m).bit_count()
    overlap = 1 if (r & m) != 0 else 0
    return Fraction((-1) ** (ham + 1 - overlap), 2)


@lru_cache(maxsize=8)
def _u_matrix(k: int) -> np.ndarray:
    """Rows m = u_{zeros(m)} as a (2^k, 2^k) 0/1 matrix."""
    size = 1 << k
    mask = size - 1
    m = np.arange(size, dtype=np.int64)[:, None]
    j = np.arange(size, dtype=np.int64)[None, :]
    inter = (~m & mask) & (~j & mask)
    u = ((inter != 0) & (inter != mask)).astype(np.int64)
    u.flags.writeable = False
    return u


def _doubled_lambda_row(k: int, r: int) -> np.ndarray:
    """Twice the coefficient row for basis vector r, entries in {-1, +1}."""
    size = 1 << k
    m = np.arange(size, dtype=np.int64)
    ham = np.bitwise_count(np.bitwise_xor(m, r)).astype(np.int64)
    overlap = (np.bitwise_and(m, r) != 0).astype(np.int64)
    return np.where((ham + 1 - overlap) % 2 == 0, 1, -1).astype(np.int64)


def lambda_row_sum(k: int, r: int) -> Fraction:
    """Sum of all 2^k coefficients for basis vector r (zero while r has a
    zero bit)."""
    if not 0 <= r < 2**k:
        raise ValueError(f"r = {r} out of range [0, {2**k})")
    return Fraction(int(_doubled_lambda_row(k, r).sum()), 2)


def reconstruct_basis(k: int, r: int) -> tuple[int, ...]:
    """Exact coefficient combination of the u family targeting basis vector r.

    Works in doubled integers (coefficients are +-1/2) so the result is an
    exact integer vector; for even k and r below 2^k - 1 it equals the
    standard basis vector e_r.
    """
    if k % 2 != 0:
        raise ValueError(f"reconstruction requires even arity, got k={k}")
    if not 0 <= r < 2**k - 1:
        raise ValueError(f"r = {r} out of range [0, {2**k - 1})")
    doubled = _doubled_lambda_row(k, r) @ _u_matrix(k)
    if np.any(doubled % 2 != 0):
        raise ArithmeticError("doubled reconstruction produced odd entries")
    return tuple(int(x) for x in doubled // 2)


def singleton_decompose(pred: Predicate) -> tuple[int, ...]:
    """Indices of the singleton predicates whose sum is the given table."""
    return tuple(i for i, b in enumerate(pred.table) if b == 1)


def singleton_predicate(k: int, q: int, r: int) -> Predicate:
    """The predicate true on exactly the tuple rep(q, k, r)."""
    size = q**k
    if not 0 <= r < size:
        raise ValueError(f"r = {r} out of range [0, {size})")
    return Predicate(k, q, tuple(1 if i == r else 0 for i in range(size)))
