import random
from fractions import Fraction
from itertools import combinations

import pytest

from addsparse import (
    ALL_BUT_ONE,
    BOOLEAN,
    BoundSpec,
    CertificationError,
    Hypergraph,
    SizeBudget,
    Sparsifier,
    certify,
    complement,
    cut_predicate,
    cut_sparsify,
    multi_predicate_epsilon,
    parse_epsilon,
    sparsify,
    sparsify_per_label,
)
from addsparse.predicates import Predicate
from addsparse.sparsifier import _edge_weights, sample_edges

from conftest import random_graph


def complete(n):
    return Hypergraph(n, 2, tuple(combinations(range(n), 2)), directed=False)


class TestEpsilonParsing:
    def test_fraction_and_decimal(self):
        assert parse_epsilon("1/4") == Fraction(1, 4)
        assert parse_epsilon("0.25") == Fraction(1, 4)

    @pytest.mark.parametrize("bad", ["0", "1", "5/4", "-1/2", "abc", "1/0"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_epsilon(bad)


class TestSizeBudget:
    def test_quadruples_when_epsilon_halves(self):
        # in the saturated-log regime the growth is the inverse square (up to ceil)
        big = SizeBudget.for_instance(10**9, 10**6, Fraction(9, 20), 4)
        small = SizeBudget.for_instance(10**9, 10**6, Fraction(9, 10), 4)
        assert abs(big.m_target / small.m_target - 4) < 0.001
        # beyond it the log factor adds a little on top
        big = SizeBudget.for_instance(10**9, 10, Fraction(1, 8), 4)
        small = SizeBudget.for_instance(10**9, 10, Fraction(1, 4), 4)
        assert 4 <= big.m_target / small.m_target <= 6

    def test_clamped_to_edge_count(self):
        assert SizeBudget.for_instance(5, 100, Fraction(1, 10), 4).m_target == 5

    def test_at_least_one(self):
        assert SizeBudget.for_instance(50, 1, Fraction(9, 10), Fraction(1, 100)).m_target >= 1

    def test_positive_constant_required(self):
        with pytest.raises(ValueError):
            SizeBudget.for_instance(5, 5, Fraction(1, 2), 0)


class TestMultiPredicateEpsilon:
    def test_boolean_binary(self):
        assert multi_predicate_epsilon("0.4", 2, 2) == Fraction(1, 10)

    def test_ternary_binary(self):
        assert multi_predicate_epsilon("0.9", 2, 3) == Fraction(1, 10)

    def test_unary(self):
        assert multi_predicate_epsilon(Fraction(1, 3), 1, 2) == Fraction(1, 6)


class TestSampling:
    def test_uniform_deterministic(self):
        g = complete(8)
        a = sample_edges(g, 10, random.Random(7), "uniform")
        b = sample_edges(g, 10, random.Random(7), "uniform")
        assert a == b and len(a) == 10

    def test_degree_deterministic(self):
        g = complete(8)
        a = sample_edges(g, 10, random.Random(7), "degree")
        b = sample_edges(g, 10, random.Random(7), "degree")
        assert a == b

    def test_budget_at_least_edges_keeps_all(self):
        g = complete(5)
        assert sample_edges(g, 99, random.Random(0), "uniform") == tuple(range(10))

    def test_star_weights_are_uniform(self):
        star = Hypergraph(8, 2, tuple((0, leaf) for leaf in range(1, 8)))
        weights = _edge_weights(star)
        assert set(weights) == {Fraction(1, 7) + 1}

    def test_regular_graph_weights_are_uniform(self):
        weights = _edge_weights(complete(6))
        assert set(weights) == {Fraction(2, 5)}

    def test_unknown_strategy(self):
        with pytest.raises(ValueError, match="strategy"):
            sample_edges(complete(4), 2, random.Random(0), "mystery")


class TestSparsifierType:
    def test_scale_must_match(self):
        with pytest.raises(ValueError, match="scale"):
            Sparsifier(10, (0, 1), Fraction(3), Fraction(1, 2))

    def test_kept_must_be_sorted_unique(self):
        with pytest.raises(ValueError, match="increasing"):
            Sparsifier(10, (1, 1), Fraction(5), Fraction(1, 2))

    def test_kept_nonempty(self):
        with pytest.raises(ValueError, match="nonempty"):
            Sparsifier(10, (), Fraction(1), Fraction(1, 2))

    def test_kept_in_range(self):
        with pytest.raises(ValueError, match="range"):
            Sparsifier(2, (0, 5), Fraction(1), Fraction(1, 2))


class TestCutSparsify:
    def test_identity_when_budget_covers_graph(self):
        g = complete(8)
        sp = cut_sparsify(g, "1/2", seed=0, certify=True)
        assert sp.kept == tuple(range(28))
        assert sp.scale == 1
        assert sp.certified.verdict and sp.certified.max_margin == 0

    def test_certified_subset_below_budget(self):
        g = complete(8)
        sp = cut_sparsify(g, "1/2", seed=0, certify=True, constant="1/4")
        assert len(sp.kept) == 8
        assert sp.certified.verdict
        assert certify(g, sp, cut_predicate(2, 2), BoundSpec(BOOLEAN, Fraction(1, 2))).verdict

    def test_retry_exhaustion(self):
        g = complete(6)
        with pytest.raises(CertificationError, match="3 attempts"):
            cut_sparsify(g, "9/10", seed=0, certify=True, constant="1/8", retry_limit=3)

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            cut_sparsify(complete(4), "3/2")

    def test_needs_edges(self):
        with pytest.raises(ValueError, match="edge"):
            cut_sparsify(Hypergraph(4, 2, ()), "1/2")

    def test_uncertified_is_single_attempt(self):
        g = complete(8)
        sp = cut_sparsify(g, "1/2", seed=5, constant="1/4")
        assert sp.attempts == 1 and sp.certified is None


class TestPipeline:
    def test_kept_indices_are_valid_base_indices(self):
        rng = random.Random(1)
        g = random_graph(rng, 7, 2, 16)
        sp = sparsify(g, "9/10", seed=2, constant="1/100")
        assert all(0 <= i < g.edge_count for i in sp.kept)
        assert sp.scale * len(sp.kept) == g.edge_count

    def test_deterministic_given_seed(self):
        rng = random.Random(2)
        g = random_graph(rng, 7, 3, 20)
        a = sparsify(g, "1/2", seed=9, constant="1/100")
        b = sparsify(g, "1/2", seed=9, constant="1/100")
        assert a == b

    def test_odd_arity_route(self):
        rng = random.Random(3)
        g = random_graph(rng, 6, 3, 12)
        sp = sparsify(g, "1/2", seed=0, certify="exhaustive")
        assert sp.certified.verdict

    def test_undirected_input(self):
        g = complete(6)
        sp = sparsify(g, "1/2", seed=0, certify="exhaustive")
        assert sp.certified.verdict

    def test_certified_serves_every_predicate(self):
        rng = random.Random(4)
        g = random_graph(rng, 6, 2, 14)
        eps = Fraction(1, 2)
        sp = sparsify(g, eps, seed=1, certify="exhaustive", domains=(2, 3))
        cut = cut_predicate(2, 2)
        checks = [cut, complement(cut)]
        checks += [Predicate(2, 2, tuple(rng.randrange(2) for _ in range(4))) for _ in range(3)]
        for p in checks:
            assert certify(g, sp, p, BoundSpec(BOOLEAN, eps)).verdict
        for _ in range(3):
            p3 = Predicate(2, 3, tuple(rng.randrange(2) for _ in range(9)))
            assert certify(g, sp, p3, BoundSpec(ALL_BUT_ONE, eps)).verdict

    def test_certified_implies_singleton_bounds_at_tightened_epsilon(self):
        from addsparse import singleton_predicate

        rng = random.Random(8)
        g = random_graph(rng, 6, 2, 13)
        eps = Fraction(1, 2)
        sp = sparsify(g, eps, seed=4, certify="exhaustive", domains=(2, 3))
        for q, mode in ((2, BOOLEAN), (3, ALL_BUT_ONE)):
            tightened = multi_predicate_epsilon(eps, 2, q)
            for r in range(q**2):
                p = singleton_predicate(2, q, r)
                assert certify(g, sp, p, BoundSpec(mode, tightened)).verdict

    def test_nontrivial_certified_run(self):
        rng = random.Random(0)
        edges = set()
        while len(edges) < 14:
            edges.add(tuple(rng.sample(range(6), 2)))
        g = Hypergraph(6, 2, tuple(sorted(edges)))
        sp = sparsify(g, "2/3", seed=0, certify="exhaustive", constant="1/64")
        assert len(sp.kept) < g.edge_count
        assert sp.certified.verdict

    def test_sampled_certification_mode(self):
        rng = random.Random(5)
        g = random_graph(rng, 8, 2, 20)
        sp = sparsify(g, "1/2", seed=0, certify="sample", trials=300)
        assert sp.certified.mode == "sampled"
        assert sp.certified.checked == 300

    def test_bad_certify_mode(self):
        with pytest.raises(ValueError, match="certify"):
            sparsify(complete(4), "1/2", certify="sometimes")

    def test_bad_domain(self):
        with pytest.raises(ValueError, match="domains"):
            sparsify(complete(4), "1/2", domains=(1,))


class TestPerLabel:
    def test_groups_and_union(self):
        rng = random.Random(6)
        g = random_graph(rng, 6, 2, 12)
        labels = tuple("cut" if i % 2 == 0 else "dicut" for i in range(g.edge_count))
        union, parts = sparsify_per_label(g, labels, "1/2", seed=0)
        assert set(parts) == {"cut", "dicut"}
        assert union.kept == tuple(range(g.edge_count))  # desk scale keeps everything
        assert union.epsilon == Fraction(1, 2)
        assert parts["cut"].epsilon == Fraction(1, 4)

    def test_label_count_checked(self):
        g = complete(4)
        with pytest.raises(ValueError, match="labels"):
            sparsify_per_label(g, ("a",), "1/2")

    def test_deterministic(self):
        rng = random.Random(7)
        g = random_graph(rng, 6, 2, 10)
        labels = tuple(rng.choice("ab") for _ in range(g.edge_count))
        r1 = sparsify_per_label(g, labels, "1/2", seed=3)
        r2 = sparsify_per_label(g, labels, "1/2", seed=3)
        assert r1 == r2
