from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eindlab import constructions as C
from eindlab.counting import count_induced, count_induced_embeddings, count_ldp3, dp3_stats
from eindlab.fractional import VertexWeighting, is_unique_fpm, max_fractional_independent_set
from eindlab.graphs import Graph, Matching, cycle, is_isomorphic, path
from eindlab.local import (
    LocalDigraph,
    count_induced_local,
    is_ldag,
    ldg,
    ldp,
    local_iso,
    topological_sort,
    uniform_signs,
    with_matching,
)
from eindlab.search import random_graph, random_graph_with_edges

from oracles import brute_count_induced_local
from strategies import graphs, graphs_without_isolated

HALF = Fraction(1, 2)
LDP3 = ldp(3)


# --- elementary hosts ---------------------------------------------------------------

def test_elementary_hosts():
    s3 = C.star(3)
    assert s3.e == 3 and sorted(s3.degrees()) == [1, 1, 1, 3]
    assert is_isomorphic(C.complete_bipartite(2, 2), cycle(4))
    j = C.join_clique_independent(2, 3)
    assert (j.n, j.e) == (5, 7)
    assert j.has_edge(0, 1) and not j.has_edge(2, 3)
    assert C.matching_host(3).edges() == [(0, 1), (2, 3), (4, 5)]
    assert C.complete(5).e == 10


def test_corona_examples():
    assert is_isomorphic(C.corona(2, 1), path(4))
    assert C.corona(3, 4).e == 15
    assert is_isomorphic(C.corona(1, 5), C.star(5))


def test_corona_edge_count_formula():
    for t in range(1, 31):
        for s in range(1, 31):
            g = C.corona(t, s)
            assert g.e == s * t + math.comb(t, 2)


def test_corona_numbering():
    g = C.corona(3, 2)
    # leaves of clique vertex 1 are 3 + 1*2 .. 3 + 2*2 - 1
    assert g.neighbors(1) == [0, 2, 5, 6]


# --- pendants and pinching --------------------------------------------------------------

def test_attach_pendants_examples():
    g, m = C.attach_pendants(path(2))
    assert is_isomorphic(g, path(4)) and m.is_perfect(g)
    net, m = C.attach_pendants(cycle(3))
    assert (net.n, net.e) == (6, 6)
    assert is_unique_fpm(net, m)
    g, m = C.attach_pendants(Graph.empty(1))
    assert is_isomorphic(g, path(2))


def test_attach_pendants_ldg_is_uniform_200_random():
    rng = random.Random(29)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        gp, m = C.attach_pendants(g)
        L = ldg(gp, m)
        assert local_iso(L, uniform_signs(g))
        assert is_unique_fpm(gp, m)


def test_pinch_examples():
    p = C.pinch(path(4))
    assert (p.n, p.e) == (3, 1)
    assert C.pinch(Graph.from_edges(4, [(0, 1), (2, 3)])).e == 0
    k4 = C.pinch(C.complete(4))
    assert (k4.n, k4.e) == (6, 3)
    assert sorted(k4.degrees()) == [1] * 6


def test_pinch_correspondence_300_random_hosts():
    rng = random.Random(31)
    patterns = [path(2), path(3), cycle(3)]
    for _ in range(300):
        h = random_graph_with_edges(rng, rng.randint(2, 10), rng.randint(1, 10))
        ph = C.pinch(h)
        for g in patterns:
            gp, _ = C.attach_pendants(g)
            assert count_induced(gp, h) <= count_induced(g, ph)


# --- weighted blowup --------------------------------------------------------------

def test_weighted_blowup_examples():
    g = C.weighted_blowup(path(2), VertexWeighting((HALF, HALF)), 8)
    assert is_isomorphic(g, C.complete_bipartite(2, 2))
    g = C.weighted_blowup(cycle(5), VertexWeighting((HALF,) * 5), 1000)
    assert (g.n, g.e) == (70, 980)
    assert is_isomorphic(g, C.blowup(C.BlowupSpec(cycle(5), (14,) * 5)))
    g = C.weighted_blowup(path(2), VertexWeighting((Fraction(1), Fraction(0))), 5)
    assert is_isomorphic(g, C.star(5))


def test_weighted_blowup_preconditions():
    with pytest.raises(ValueError):
        C.weighted_blowup(path(2), VertexWeighting((Fraction(1), HALF)), 5)
    with pytest.raises(ValueError):
        C.weighted_blowup(Graph.from_edges(3, [(0, 1)]), VertexWeighting((HALF,) * 3), 5)
    with pytest.raises(ValueError):
        C.weighted_blowup(cycle(3), VertexWeighting((HALF,) * 3), 2)


@given(graphs_without_isolated(max_n=5), st.integers(1, 400))
def test_weighted_blowup_budget(g, extra):
    m = g.e + extra
    _, alpha = max_fractional_independent_set(g)
    out = C.weighted_blowup(g, alpha, m)
    assert out.e <= m
    sizes = [C._floor_power(Fraction(m, g.e), a) for a in alpha.weights]
    assert all(s >= 1 for s in sizes)
    assert count_induced(g, C.BlowupSpec(g, sizes)) >= math.prod(sizes)


@given(st.fractions(min_value=1, max_value=10**4), st.sampled_from([0, HALF, 1, Fraction(1, 3)]))
def test_floor_power_is_exact(base, exp):
    x = C._floor_power(base, Fraction(exp))
    q = Fraction(exp).denominator
    p = Fraction(exp).numerator
    assert Fraction(x) ** q <= base**p < Fraction(x + 1) ** q


# --- blowups --------------------------------------------------------------------

def test_blowup_examples():
    b = C.blowup(C.BlowupSpec(cycle(5), (2,) * 5))
    assert (b.n, b.e) == (10, 20)
    assert is_isomorphic(C.blowup(C.BlowupSpec(path(2), (3, 4))), C.complete_bipartite(3, 4))
    it = C.iterated_blowup(LDP3, 1)
    assert it.n == 9 and is_ldag(it)
    assert C.iterated_blowup(LDP3, 0) == LDP3


def test_blowup_spec_validation():
    with pytest.raises(ValueError):
        C.BlowupSpec(path(3), (1, 2))
    with pytest.raises(ValueError):
        C.BlowupSpec(path(2), (0, 2))
    with pytest.raises(ValueError):
        C.iterated_blowup(path(2), -1)


def test_local_blowup_spec_copies_signs():
    spec = C.BlowupSpec(LDP3, (1, 2, 1))
    out = C.blowup(spec)
    assert (out.n, out.e) == (4, 4) and spec.e == 4
    assert is_ldag(out)
    with pytest.raises(TypeError):
        spec.to_quotient()


def test_graph_iterated_blowup_sizes():
    g = C.iterated_blowup(path(2), 2)
    assert g.n == 8
    # K2 inside every part of K2 is K4; once more gives K8
    assert is_isomorphic(g, C.complete(8))
    c4 = C.iterated_blowup(cycle(4), 1)
    assert (c4.n, c4.e) == (16, 4 * 16 + 4 * 4)


# --- reduction host -------------------------------------------------------------------

def test_ldag_host_graph_p6_example():
    host, matched = C.ldag_host_graph(LDP3, [(1, 12), (2, 6), (3, 4)])
    assert len(matched) == 3 * 12
    assert count_induced(path(6), host) >= 12**3 * count_induced_local(LDP3, LDP3)


def test_ldag_host_graph_single_vertex():
    host, matched = C.ldag_host_graph(LocalDigraph(1), [(1, 7)])
    assert is_isomorphic(host, C.star(7))
    assert len(matched) == 7


def test_ldag_host_graph_edge_count():
    L = LocalDigraph.build(2, [(0, 1, 1, -1)])
    pairs = [(1, 6), (2, 3)]
    host, _ = C.ldag_host_graph(L, pairs)
    # two matched blocks of k = 6 edges plus the blown-up signed edge
    assert host.e == 2 * 6 + 1 * 3
    assert host.e <= 2 * 6 + 1 * (2 + 3)


def test_ldag_host_count_relation_random():
    rng = random.Random(37)
    for _ in range(20):
        n = rng.randint(1, 3)
        lead = [rng.choice((1, -1)) for _ in range(n)]
        L = LocalDigraph.build(
            n,
            [(u, lead[u], v, rng.choice((1, -1)))
             for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.7],
        )
        pairs = C.geometric_pairs(n, 2)
        k = pairs[0][0] * pairs[0][1]
        host, _ = C.ldag_host_graph(L, pairs)
        # the graph whose unique matching gives L back
        g, m = with_matching(L)
        assert is_unique_fpm(g, m)
        assert count_induced(g, host) >= k**n


@pytest.mark.parametrize(
    "pairs",
    [
        [(2, 6), (1, 12), (3, 4)],  # not increasing
        [(1, 12), (2, 5), (3, 4)],  # unequal products
        [(1, 12), (2, 6)],  # wrong length
        [(1, 12), (3, 4), (4, 3)],  # plus side above minus side
    ],
)
def test_ldag_host_preconditions(pairs):
    with pytest.raises(ValueError):
        C.ldag_host_graph(LDP3, pairs)


def test_ldag_host_rejects_cyclic():
    L = LocalDigraph.build(2, [(0, 1, 1, 1), (0, -1, 1, -1)])
    with pytest.raises(ValueError):
        C.ldag_host_graph(L, [(1, 4), (2, 2)])


def test_geometric_pairs():
    pairs = C.geometric_pairs(4, 3)
    assert len({p * q for p, q in pairs}) == 1
    assert all(a[0] < b[0] for a, b in zip(pairs, pairs[1:]))
    assert all(p < q for p, q in pairs)


def test_forward_normalization_keeps_class():
    rng = random.Random(41)
    for _ in range(50):
        n = rng.randint(1, 5)
        lead = [rng.choice((1, -1)) for _ in range(n)]
        L = LocalDigraph.build(
            n,
            [(u, lead[u], v, rng.choice((1, -1)))
             for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.5],
        )
        N = C._forward_normalized(L)
        assert local_iso(L, N)
        for e in N.edges:
            assert e.sign_at(min(e.u, e.v)) == 1


# --- g_k and h_4t ---------------------------------------------------------------------

@pytest.mark.parametrize("k", range(1, 7))
def test_g_k_count_matches_formula(k):
    G = C.g_k(k)
    assert G.n == 4 * k and is_ldag(G)
    assert count_induced_local(LDP3, G) == C.g_k_ldp3_formula(k) == count_ldp3(G)


def test_g_k_small_counts_brute_force():
    assert [C.g_k_ldp3_formula(k) for k in range(1, 7)] == [3, 26, 89, 212, 415, 718]
    assert brute_count_induced_local(LDP3, C.g_k(1)) == 3


def test_g_k_topological_order():
    k = 3
    ts = topological_sort(C.g_k(k))
    assert ts is not None
    # v's come before their u-neighbours in any sort
    pos = {v: i for i, v in enumerate(ts.order)}
    assert all(pos[i] < pos[u] for i in range(2 * k) for u in range(2 * k, 4 * k)
               if any({e.u, e.v} == {i, u} for e in C.g_k(k).edges))


def test_h_4t():
    assert C.h_4t(0) == C.g_k(1)
    for t in range(3):
        h = C.h_4t(t)
        assert h.n == 4 ** (t + 1)
        assert is_ldag(h)
    with pytest.raises(ValueError):
        C.h_4t(4)
    with pytest.raises(ValueError):
        C.g_k(0)


# --- forward DAGs -----------------------------------------------------------------

def test_forward_dag_examples():
    assert dp3_stats(C.forward_dag(3, 0b111)).count == 0
    assert dp3_stats(C.forward_dag_from_edges(3, [(0, 1), (1, 2)])).count == 1
    assert dp3_stats(C.forward_dag(3, 0)).count == 0
    with pytest.raises(ValueError):
        C.forward_dag(3, 1 << 3)
    with pytest.raises(ValueError):
        C.forward_dag_from_edges(3, [(2, 1)])


def test_forward_dag_slots_are_lexicographic():
    d = C.forward_dag(5, 0)
    slots = [d.slot(i, j) for i, j in itertools.combinations(range(5), 2)]
    assert slots == list(range(10))


def test_better_construction_host_is_counted_exactly():
    g, m = path(4), Matching.parse("0-1,2-3")
    spec = C.better_construction_host(g, m, depth=1, flips=(0,), ratio=3)
    host = spec.materialize()
    assert count_induced_embeddings(g, spec) == count_induced_embeddings(g, host)
