from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eindlab import constructions as C
from eindlab.counting import (
    count_copies,
    count_embeddings,
    count_induced,
    count_induced_embeddings,
    count_ldp3,
    count_perfect_matchings,
    dp3_bound,
    dp3_stats,
    eind_ratio,
    eind_ratio_squared,
    iter_induced_embeddings,
    ldp3_ab_bound,
    pm_count_bound,
    sqrt_fraction,
    triple_indicators,
    trivial_embedding_bound,
    trivial_upper_bound,
    within_trivial_bound,
)
from eindlab.graphs import Graph, aut_order, cycle, path
from eindlab.local import LocalDigraph, count_induced_local, ldp
from eindlab.quotient import twin_quotient
from eindlab.search import random_local_digraph

from oracles import brute_dp3, brute_embeddings, brute_perfect_matchings
from strategies import graphs, graphs_without_isolated, local_digraphs

K2 = path(2)
K3 = cycle(3)
K4 = C.complete(4)
STAR2 = C.star(2)


def test_embedding_examples():
    assert count_embeddings(K2, K3) == 6
    assert count_copies(K2, K3) == 3
    assert count_embeddings(path(4), cycle(5)) == 10
    assert count_embeddings(K3, C.complete_bipartite(3, 3)) == 0


def test_induced_examples():
    assert count_induced_embeddings(cycle(4), C.complete_bipartite(2, 2)) == 8
    assert count_induced(cycle(4), C.complete_bipartite(2, 2)) == 1
    assert count_induced(cycle(4), C.complete_bipartite(3, 3)) == math.comb(3, 2) ** 2
    assert count_induced_embeddings(path(4), C.corona(3, 4)) == 2 * math.comb(3, 2) * 4**2


@given(graphs(max_n=4), graphs(max_n=7))
def test_counts_match_brute_force(g, h):
    assert count_embeddings(g, h) == brute_embeddings(g, h, induced=False)
    assert count_induced_embeddings(g, h) == brute_embeddings(g, h, induced=True)


@given(graphs(min_n=1, max_n=5), graphs(max_n=8))
def test_induced_embeddings_are_aut_times_copies(g, h):
    e = count_induced_embeddings(g, h)
    assert e % aut_order(g) == 0
    assert e == aut_order(g) * count_induced(g, h)
    assert count_embeddings(g, h) % aut_order(g) == 0


@given(graphs(min_n=1, max_n=4), graphs(max_n=7))
def test_iter_embeddings_agree_with_count(g, h):
    embs = list(iter_induced_embeddings(g, h))
    assert len(embs) == len(set(embs)) == count_induced_embeddings(g, h)
    for t in embs:
        for a, b in itertools.combinations(range(g.n), 2):
            assert g.has_edge(a, b) == h.has_edge(t[a], t[b])


@given(graphs(min_n=1, max_n=4), graphs(max_n=9))
def test_twin_quotient_counts_match_materialized(g, h):
    q = twin_quotient(h)
    assert q.n == h.n and q.e == h.e
    assert count_induced_embeddings(g, q) == count_induced_embeddings(g, h)
    assert count_embeddings(g, q) == count_embeddings(g, h)


def test_blowup_spec_counts_without_materializing():
    spec = C.BlowupSpec(cycle(5), (2, 3, 1, 2, 2))
    host = spec.materialize()
    assert spec.e == host.e
    for g in (path(3), path(4), cycle(5), cycle(4)):
        assert count_induced_embeddings(g, spec) == count_induced_embeddings(g, host)


def test_pattern_limit():
    with pytest.raises(ValueError):
        count_embeddings(path(9), path(12))


# --- ratios ---------------------------------------------------------------------

@pytest.mark.parametrize("s", [1, 2, 3])
def test_c5_blowup_ratio_is_constant(s):
    spec = C.BlowupSpec(cycle(5), (s,) * 5)
    assert eind_ratio_squared(cycle(5), spec) == Fraction(1, 1000)
    assert abs(eind_ratio(cycle(5), spec) - 10**-1.5) <= 1e-12
    # s = 2, 3 also checked on the materialized host
    assert count_induced_embeddings(cycle(5), spec.materialize()) == 10 * s**5


def test_corona_ratio_closed_form():
    t, s = 50, 5000
    closed = (t * t - t) * s * s / (4 * (s * t + t * (t - 1) / 2) ** 2)
    r = eind_ratio(path(4), C.corona(t, s))
    assert abs(r - closed) < 1e-12
    assert abs(r - 0.2426) < 1e-4


@pytest.mark.parametrize("n", [2, 5, 30])
def test_k2_ratio_in_complete_graph(n):
    assert eind_ratio(K2, C.complete(n)) == 1.0


def test_ratio_rejects_isolated_pattern_vertices():
    with pytest.raises(ValueError):
        eind_ratio(Graph.from_edges(3, [(0, 1)]), C.complete(4))


def test_ratio_rejects_edgeless_host():
    with pytest.raises(ValueError):
        eind_ratio(K2, Graph.empty(3))


@given(st.fractions(min_value=0, max_value=10**6))
def test_sqrt_fraction(x):
    assert math.isclose(sqrt_fraction(x), math.sqrt(float(x)), rel_tol=1e-12, abs_tol=1e-300)


def test_sqrt_fraction_huge():
    x = Fraction(3 * 10**400 + 1, 10**400)
    assert math.isclose(sqrt_fraction(x), math.sqrt(3), rel_tol=1e-14)


# --- bounds -------------------------------------------------------------------------

def test_trivial_bound_examples():
    m = 17
    assert trivial_upper_bound(STAR2, m) == pytest.approx((2 * m) ** 2 / 2)
    assert trivial_upper_bound(cycle(5), m) == pytest.approx((2 * m) ** 2.5 / 10)
    assert trivial_embedding_bound(K2, 1) == 2
    assert count_induced_embeddings(K2, K2) == 2
    with pytest.raises(ValueError):
        trivial_embedding_bound(K2, -1)


def test_within_trivial_bound_is_exact_at_equality():
    # K2 in a single edge: 1 copy * |Aut| 2 = (2*1)^1
    assert within_trivial_bound(K2, 1, 1)
    assert not within_trivial_bound(K2, 1, 2)


@given(graphs_without_isolated(max_n=5), graphs(max_n=8))
def test_counts_respect_trivial_bound(g, h):
    if h.e:
        assert within_trivial_bound(g, h.e, count_induced(g, h))


def test_pm_count_bound_examples():
    m = 9
    assert pm_count_bound(cycle(4), m) == Fraction(math.comb(m, 2), 2)
    assert pm_count_bound(path(4), m) == math.comb(m, 2)
    assert pm_count_bound(K4, 6) == 5


def test_pm_count_bound_errors():
    with pytest.raises(ValueError):
        pm_count_bound(K3, 5)
    with pytest.raises(ValueError):
        pm_count_bound(C.star(3), 5)


@given(graphs(max_n=10))
def test_perfect_matching_count_matches_brute_force(g):
    assert count_perfect_matchings(g) == brute_perfect_matchings(g)


@given(graphs_without_isolated(max_n=6), graphs(max_n=8))
def test_counts_respect_pm_bound(g, h):
    if g.n % 2 == 0 and count_perfect_matchings(g) and h.e:
        assert count_induced(g, h) <= pm_count_bound(g, h.e)


# --- LDP3 counting and the A/B bound ----------------------------------------------------

@given(local_digraphs(max_n=7))
def test_fast_ldp3_count_matches_generic_count(H):
    assert count_ldp3(H) == count_induced_local(ldp(3), H)


def test_ab_bound_on_g2():
    res = ldp3_ab_bound(C.g_k(2))
    assert res.count == 26
    assert res.holds


def test_ab_bound_edgeless():
    res = ldp3_ab_bound(LocalDigraph(5))
    assert (res.count, res.a, res.b) == (0, 0, 0)


def test_ab_bound_200_random_hosts():
    rng = random.Random(23)
    for _ in range(200):
        H = random_local_digraph(rng, rng.randint(1, 10), rng.random(), rng.randint(1, 2))
        res = ldp3_ab_bound(H)
        assert res.count <= res.bound <= res.cube
        assert res.count == count_induced_local(ldp(3), H)


# --- directed P3 in forward DAGs ------------------------------------------------------

def test_dp3_path():
    st_ = dp3_stats(C.forward_dag_from_edges(3, [(0, 1), (1, 2)]))
    assert st_.count == 1 and st_.bound == 1


def test_dp3_balanced_blowup():
    st_ = dp3_stats(C.dp3_blowup((2, 2, 2)))
    assert st_.count == 8
    assert st_.bound == Fraction(70, 8)


def test_per_triple_values_exhaustive():
    # the sum is 0 or 2; it is 2 on induced directed paths and on triples
    # whose only edge joins the two outer vertices
    for n in range(3, 6):
        for mask in range(1 << math.comb(n, 2)):
            dag = C.forward_dag(n, mask)
            for i, j, k in itertools.combinations(range(n), 3):
                val = sum(triple_indicators(dag, i, j, k))
                ij, jk, ik = dag.edge(i, j), dag.edge(j, k), dag.edge(i, k)
                dp3 = ij and jk and not ik
                lone_outer = ik and not ij and not jk
                assert val in (0, 2)
                assert (val == 2) == (dp3 or lone_outer)


@given(st.integers(3, 9), st.data())
def test_dp3_stats_identities(n, data):
    mask = data.draw(st.integers(0, (1 << math.comb(n, 2)) - 1))
    dag = C.forward_dag(n, mask)
    s = dp3_stats(dag)
    assert s.identity_ok and s.triples_ok
    assert s.count == brute_dp3(n, set(dag.edges()))
    assert s.count <= s.bound
    assert sum(s.forward) == sum(s.backward) == len(dag.edges())


def test_dp3_bound_values():
    assert dp3_bound(3) == 1
    assert math.floor(dp3_bound(4)) == 2
    assert dp3_bound(6) == Fraction(70, 8)
