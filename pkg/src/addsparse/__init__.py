"""Additive sparsification of k-uniform hypergraph CSP instances.

Exact data model for hypergraphs, predicates and assignments; layered-cover
reductions; a Las-Vegas certified sparsifier; and an exhaustive verifier
for the additive error bounds.
"""

from .cover import (
    Cover,
    cover,
    extend_with_anchor,
    lift_singleton,
    lift_subset,
    lift_uniform,
    odd_lift,
    singleton_lift_predicate,
    undirected_equivalent,
)
from .hypergraph import (
    Assignment,
    DegreeProfile,
    Hypergraph,
    as_directed,
    degree_profile,
    part_extremes,
    subhypergraph,
    value,
    volume,
    zero_set,
)
from .optimality import OptimalityReport, optimality_counterexample
from .predicates import (
    Predicate,
    builtin_predicate,
    complement,
    cut_predicate,
    index,
    lambda_coeff,
    lambda_row_sum,
    profile_vector,
    reconstruct_basis,
    rep,
    singleton_decompose,
    singleton_predicate,
    u_predicate,
    u_vector,
    zeros,
)
from .sparsifier import (
    CertificationError,
    SizeBudget,
    Sparsifier,
    cut_sparsify,
    multi_predicate_epsilon,
    parse_epsilon,
    sparsify,
    sparsify_per_label,
)
from .verify import (
    ALL_BUT_ONE,
    BOOLEAN,
    BoundSpec,
    CertReport,
    certify,
    certify_singletons,
    check_assignment,
    error_bound,
    min_feasible_epsilon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
