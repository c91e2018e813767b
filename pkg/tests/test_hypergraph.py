import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from addsparse import (
    Assignment,
    Hypergraph,
    as_directed,
    complement,
    cut_predicate,
    degree_profile,
    part_extremes,
    profile_vector,
    subhypergraph,
    value,
    volume,
    zero_set,
)
from addsparse.predicates import Predicate

from conftest import random_graph
from strategies import hypergraphs, instances


class TestConstruction:
    def test_rejects_wrong_arity(self):
        with pytest.raises(ValueError, match="entries"):
            Hypergraph(3, 2, ((0, 1, 2),))

    def test_rejects_out_of_range_vertex(self):
        with pytest.raises(ValueError, match="out of range"):
            Hypergraph(2, 2, ((0, 2),))

    def test_rejects_duplicate_directed_edge(self):
        with pytest.raises(ValueError, match="duplicate"):
            Hypergraph(3, 2, ((0, 1), (0, 1)))

    def test_directed_reversed_edges_are_distinct(self):
        g = Hypergraph(2, 2, ((0, 1), (1, 0)))
        assert g.edge_count == 2

    def test_undirected_edges_are_canonicalised_and_merged(self):
        g = Hypergraph(3, 2, ((2, 0), (0, 2), (1, 2)), directed=False)
        assert g.edges == ((0, 2), (1, 2))

    def test_repeated_vertex_in_edge_allowed(self):
        g = Hypergraph(2, 2, ((0, 0), (0, 1)))
        assert g.degrees() == (3, 1)

    def test_rejects_bad_arity_and_n(self):
        with pytest.raises(ValueError):
            Hypergraph(1, 0, ())
        with pytest.raises(ValueError):
            Hypergraph(-1, 2, ())


class TestDegrees:
    def test_single_edge(self):
        g = Hypergraph(2, 2, ((0, 1),))
        prof = degree_profile(g)
        assert prof.degrees == (1, 1)
        assert prof.average == 1

    def test_empty_edge_set(self):
        prof = degree_profile(Hypergraph(3, 2, ()))
        assert prof.degrees == (0, 0, 0)
        assert prof.average == 0

    def test_demo7_average(self, demo7):
        prof = degree_profile(demo7)
        assert prof.degrees == (2, 4, 2, 5, 2, 4, 3)
        assert prof.average == Fraction(22, 7)

    def test_no_vertices(self):
        assert degree_profile(Hypergraph(0, 2, ())).average is None

    @given(hypergraphs())
    def test_handshake(self, g):
        assert sum(g.degrees()) == g.k * g.edge_count


class TestVolume:
    def test_empty_subset(self, demo7):
        assert volume(demo7, ()) == 0

    def test_full_vertex_set(self, demo7):
        assert volume(demo7, range(7)) == 2 * demo7.edge_count

    def test_demo7_single_vertex(self, demo7):
        assert volume(demo7, {3}) == 5

    def test_out_of_range(self, demo7):
        with pytest.raises(ValueError, match="out of range"):
            volume(demo7, {7})


class TestZeroSetAndParts:
    def test_all_ones(self):
        assert zero_set(Assignment((1, 1, 1), 2)) == frozenset()

    def test_all_zeros(self):
        assert zero_set(Assignment((0, 0, 0, 0), 2)) == frozenset({0, 1, 2, 3})

    def test_demo7_assignment(self, demo7_assignment):
        assert zero_set(demo7_assignment) == frozenset({0, 1, 2})

    def test_boolean_extremes_equal_zero_set(self, demo7, demo7_assignment):
        m, n = part_extremes(demo7, demo7_assignment)
        assert m == n == zero_set(demo7_assignment)

    def test_unique_maximum_part(self):
        g = Hypergraph(4, 2, ((0, 1), (1, 2), (2, 3), (3, 0)))
        a = Assignment((0, 0, 0, 1), 3)
        m, n = part_extremes(g, a)
        assert m == n == frozenset({0, 1, 2})

    def test_size_and_volume_maximisers_differ(self):
        # v0, v1 have degree 1; v2 has degree 5.
        g = Hypergraph(5, 2, ((0, 2), (1, 2), (2, 3), (3, 2), (2, 4)))
        a = Assignment((0, 0, 1, 2, 2), 3)
        m, n = part_extremes(g, a)
        assert m == frozenset({0, 1})
        assert n == frozenset({2})

    def test_tie_breaks_to_smallest_value(self):
        g = Hypergraph(2, 2, ((0, 1),))
        a = Assignment((0, 1), 3)
        m, n = part_extremes(g, a)
        assert m == n == frozenset({0})


class TestValue:
    def test_constant_zero_predicate(self, demo7, demo7_assignment):
        p = Predicate(2, 2, (0, 0, 0, 0))
        assert value(demo7, p, demo7_assignment) == 0

    def test_demo7_cut(self, demo7, demo7_assignment):
        assert value(demo7, cut_predicate(2, 2), demo7_assignment) == 4

    def test_all_ones_saturates(self, demo7):
        p = Predicate(2, 2, (0, 0, 0, 1))
        a = Assignment((1,) * 7, 2)
        assert value(demo7, p, a) == demo7.edge_count

    def test_arity_mismatch(self, demo7, demo7_assignment):
        with pytest.raises(ValueError, match="arity"):
            value(demo7, Predicate(3, 2, (0,) * 8), demo7_assignment)

    def test_domain_mismatch(self, demo7):
        with pytest.raises(ValueError, match="domain"):
            value(demo7, Predicate(2, 2, (0, 1, 1, 0)), Assignment((0,) * 7, 3))

    def test_asymmetric_predicate_rejected_on_undirected(self):
        g = Hypergraph(3, 2, ((0, 1), (1, 2)), directed=False)
        dicut = Predicate(2, 2, (0, 1, 0, 0))
        with pytest.raises(ValueError, match="order-invariant"):
            value(g, dicut, Assignment((0, 1, 0), 2))

    @settings(max_examples=60)
    @given(instances(directed=True))
    def test_value_bounded_by_edge_count(self, inst):
        g, p, a = inst
        v = value(g, p, a)
        assert 0 <= v <= g.edge_count

    @settings(max_examples=60)
    @given(instances(directed=True))
    def test_complement_partition(self, inst):
        g, p, a = inst
        assert value(g, p, a) + value(g, complement(p), a) == g.edge_count

    @settings(max_examples=60)
    @given(instances(directed=True))
    def test_matches_profile_inner_product(self, inst):
        g, p, a = inst
        prof = profile_vector(g, a)
        assert value(g, p, a) == sum(b * c for b, c in zip(p.table, prof))


class TestStructuralOps:
    def test_as_directed_preserves_symmetric_values(self):
        rng = random.Random(5)
        g = random_graph(rng, 5, 2, 7, directed=False)
        d = as_directed(g)
        a = Assignment(tuple(rng.randrange(2) for _ in range(5)), 2)
        cut = cut_predicate(2, 2)
        assert d.directed and d.edges == g.edges
        assert value(g, cut, a) == value(d, cut, a)
        assert degree_profile(g) == degree_profile(d)

    def test_subhypergraph_picks_indices(self, demo7):
        sub = subhypergraph(demo7, (0, 3, 10))
        assert sub.edges == ((0, 1), (3, 5), (6, 5))

    def test_subhypergraph_range_check(self, demo7):
        with pytest.raises(ValueError, match="edge index"):
            subhypergraph(demo7, (11,))
