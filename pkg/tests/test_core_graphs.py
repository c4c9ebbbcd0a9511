from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eindlab.graphs import (
    DuplicateEdge,
    Graph,
    InvalidMatching,
    MalformedHeader,
    MalformedLine,
    Matching,
    SelfLoop,
    SizeLimitExceeded,
    VertexOutOfRange,
    aut_order,
    canonical_form,
    cycle,
    is_isomorphic,
    parse_graph,
    path,
    petersen,
    serialize_graph,
)

from oracles import brute_automorphisms, nx_automorphisms, to_nx
from strategies import graphs


def test_parse_single_edge():
    g = parse_graph("graph 2\ne 0 1")
    assert (g.n, g.edges()) == (2, [(0, 1)])


def test_parse_path():
    g = parse_graph("graph 4\ne 0 1\ne 1 2\ne 2 3")
    assert g == path(4)


@pytest.mark.parametrize(
    "text, err",
    [
        ("graph 3\ne 0 0", SelfLoop),
        ("grph 3\n", MalformedHeader),
        ("", MalformedHeader),
        ("graph x\n", MalformedHeader),
        ("graph 3\ne 0 3", VertexOutOfRange),
        ("graph 3\ne 0 1\ne 1 0", DuplicateEdge),
        ("graph 3\nf 0 1", MalformedLine),
        ("graph 3\ne 0", MalformedLine),
    ],
)
def test_parse_errors_are_distinct(text, err):
    with pytest.raises(err):
        parse_graph(text)


def test_serialize_is_sorted_and_lf_terminated():
    g = Graph.from_edges(4, [(3, 2), (1, 0), (0, 2)])
    assert serialize_graph(g) == "graph 4\ne 0 1\ne 0 2\ne 2 3\n"


@given(graphs(max_n=12))
def test_parse_serialize_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


def test_round_trip_1000_random_graphs():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(0, 12)
        p = rng.random()
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
        text = serialize_graph(g)
        assert parse_graph(text) == g
        assert serialize_graph(parse_graph(text)) == text


def test_graph_rejects_self_loops():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])


def test_canonical_form_relabeled_p4():
    a = path(4)
    b = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_separates_p4_and_claw():
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(path(4)) != canonical_form(claw)


def test_eleven_classes_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    forms = {}
    for mask in range(1 << 6):
        g = Graph.from_edges(4, [p for i, p in enumerate(pairs) if mask >> i & 1])
        forms.setdefault(canonical_form(g), []).append(g)
    assert len(forms) == 11
    # every class is a single networkx isomorphism class, and classes differ
    reps = []
    for members in forms.values():
        x = to_nx(members[0])
        assert all(nx.is_isomorphic(x, to_nx(h)) for h in members)
        reps.append(x)
    for x, y in itertools.combinations(reps, 2):
        assert not nx.is_isomorphic(x, y)


@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))


@given(graphs(max_n=8), graphs(max_n=8))
def test_canonical_form_agrees_with_networkx(g, h):
    same = g.n == h.n and nx.is_isomorphic(to_nx(g), to_nx(h))
    assert (canonical_form(g) == canonical_form(h)) == same
    assert is_isomorphic(g, h) == same


def test_canonical_form_regular_graphs_on_twelve_vertices():
    # equal degree sequences, so refinement alone cannot separate them
    rng = random.Random(3)
    found = []
    for seed in range(12):
        x = nx.random_regular_graph(3, 12, seed=rng.randrange(10**6))
        g = Graph.from_edges(12, x.edges())
        for other in found:
            assert (canonical_form(g) == canonical_form(other)) == nx.is_isomorphic(x, to_nx(other))
        perm = list(range(12))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == canonical_form(g)
        found.append(g)


def test_canonical_form_size_limit():
    with pytest.raises(SizeLimitExceeded):
        canonical_form(path(13))


@pytest.mark.parametrize(
    "g, order",
    [(cycle(5), 10), (path(6), 2), (cycle(4), 8), (petersen(), 120)],
)
def test_aut_order_examples(g, order):
    assert aut_order(g) == order


@given(graphs(max_n=7))
def test_aut_order_matches_brute_force(g):
    assert aut_order(g) == brute_automorphisms(g)


def test_aut_order_matches_networkx_on_atlas():
    for x in nx.graph_atlas_g()[1:300]:
        g = Graph.from_edges(x.number_of_nodes(), x.edges())
        assert aut_order(g) == nx_automorphisms(g)


def test_aut_order_size_limit():
    with pytest.raises(SizeLimitExceeded):
        aut_order(path(11))


def test_matching_predicates():
    g = path(4)
    m = Matching.parse("0-1, 2-3")
    assert m.is_perfect(g)
    assert not Matching.parse("0-1").is_perfect(g)
    assert not Matching.parse("1-2,0-3").is_matching_of(g)
    assert not Matching.parse("0-1,1-2").is_matching_of(g)
    with pytest.raises(InvalidMatching):
        Matching.parse("1-2").check_perfect(g)
    assert m.partner() == {0: 1, 1: 0, 2: 3, 3: 2}
    assert str(m) == "0-1,2-3"
