import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clique_measure import budget
from clique_measure.errors import BudgetExceeded, ContractError
from clique_measure.graphs import (
    KPartiteGraph,
    SampleParams,
    SimpleGraph,
    all_tuples,
    canonical_pair,
    common_neighborhood_size,
    count_k_cliques,
    cross_pairs,
    is_clique,
    iter_cliques,
    neighborhood_report,
    pair_index,
    rational_edge_probability,
    sample_kpartite,
)

A1, A2, B1, B2 = (0, 0), (0, 1), (1, 0), (1, 1)


def test_p_one_gives_complete_graph():
    g = sample_kpartite(SampleParams(2, 2, Fraction(1), 5))
    assert g.num_edges == 4 and g == KPartiteGraph.complete(2, 2)


def test_p_zero_rejected():
    with pytest.raises(ContractError):
        SampleParams(2, 2, Fraction(0), 1)
    with pytest.raises(ContractError):
        SampleParams(2, 2, Fraction(1, 2), -1)


@given(st.integers(0, 2**64 - 1), st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_sampling_is_deterministic(seed, n, k):
    params = SampleParams(n, k, Fraction(1, 3), seed)
    assert sample_kpartite(params) == sample_kpartite(params)


def test_mean_edge_count_within_three_sigma():
    counts = [sample_kpartite(SampleParams(3, 3, Fraction(1, 2), s)).num_edges for s in range(10_000)]
    mean = sum(counts) / len(counts)
    sigma = math.sqrt(27 / 4) / math.sqrt(len(counts))
    assert abs(mean - 13.5) <= 3 * sigma


def test_draw_prefix_stability():
    # pair i depends on (seed, i) only, so graphs on more blocks extend smaller ones in draw order
    from clique_measure.graphs import pair_draws

    assert np.array_equal(pair_draws(11, 5), pair_draws(11, 9)[:5])


def test_rational_edge_probability():
    assert rational_edge_probability(4, 2) == Fraction(1, 4)
    assert rational_edge_probability(2, 2) == Fraction(1, 2)
    p = rational_edge_probability(3, 4)
    assert abs(float(p) - 3**-0.5) < 1e-9 and p.denominator <= 10**9


def test_is_clique_examples():
    n, k = 2, 2
    assert all(is_clique(KPartiteGraph.complete(3, 3), t) for t in all_tuples(3, 3))
    assert not any(is_clique(KPartiteGraph.empty(3, 3), t) for t in all_tuples(3, 3))
    g = KPartiteGraph(n, k, frozenset({(A1, B1)}))
    assert is_clique(g, (0, 0)) and not is_clique(g, (0, 1))
    with pytest.raises(ContractError):
        is_clique(g, (0, 2))


def test_count_examples():
    assert count_k_cliques(KPartiteGraph.complete(2, 2)) == 4
    assert count_k_cliques(KPartiteGraph.empty(3, 3)) == 0
    assert count_k_cliques(KPartiteGraph(2, 2, frozenset({(A1, B1)}))) == 1


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_count_matches_bruteforce(seed, n, k):
    g = sample_kpartite(SampleParams(n, k, Fraction(1, 2), seed))
    brute = [t for t in all_tuples(n, k) if is_clique(g, t)]
    assert count_k_cliques(g) == len(brute)
    assert sorted(iter_cliques(g)) == brute


def test_count_respects_budget():
    budget.set_budget(10)
    try:
        with pytest.raises(BudgetExceeded):
            count_k_cliques(KPartiteGraph.complete(3, 3))
    finally:
        budget.set_budget(None)


def test_common_neighborhood_examples():
    assert common_neighborhood_size(KPartiteGraph.complete(3, 3), [(0, 1)], 2) == 3
    assert common_neighborhood_size(KPartiteGraph.empty(3, 3), [(0, 1)], 2) == 0
    g = KPartiteGraph(2, 2, frozenset({(A1, B1), (A2, B1)}))
    assert common_neighborhood_size(g, [B1], 0) == 2
    with pytest.raises(ContractError):
        common_neighborhood_size(g, [B1], 1)


def test_neighborhood_report_complete_graph_is_clean():
    rep = neighborhood_report(KPartiteGraph.complete(4, 3), 8, Fraction(1))
    assert rep.ok and rep.max_a == 2 and rep.checked > 0


def test_pair_helpers():
    pairs = cross_pairs(2, 3)
    assert len(pairs) == 3 * 4
    assert [pair_index(2, 3, p) for p in pairs] == list(range(12))
    assert canonical_pair(B1, A2) == (A2, B1)
    with pytest.raises(ContractError):
        canonical_pair(A1, A2)


def test_serialization_round_trips():
    g = sample_kpartite(SampleParams(3, 3, Fraction(1, 2), 4))
    assert KPartiteGraph.from_json(g.to_json(Fraction(1, 2), 4)) == g
    assert KPartiteGraph.from_edgelist(g.to_edgelist()) == g
    with pytest.raises(ContractError):
        KPartiteGraph.from_edgelist("0 0 1 1\n")


def test_simple_graph_names():
    assert SimpleGraph.named("triangle").edges == {(0, 1), (0, 2), (1, 2)}
    assert SimpleGraph.named("C5").degree(0) == 2
    assert SimpleGraph.named("single").num_vertices == 1
    with pytest.raises(ContractError):
        SimpleGraph.named("Q3")
