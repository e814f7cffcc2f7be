import itertools

import pytest
from hypothesis import given, settings, strategies as st

from matchtoric import graphs
from matchtoric.graphs import SimpleGraph

from oracles import brute_matchings, brute_stable_sets


@st.composite
def small_graphs(draw, max_vertices=6, min_vertices=1):
    d = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(1, d + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return SimpleGraph(d, tuple(chosen))


def test_simple_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        SimpleGraph(3, ((1, 1),))
    with pytest.raises(ValueError):
        SimpleGraph(3, ((1, 2), (2, 1)))
    with pytest.raises(ValueError):
        SimpleGraph(3, ((1, 4),))


def test_line_graph_examples():
    K3 = graphs.complete_graph(3)
    assert graphs.line_graph(K3).same_graph(K3)
    assert graphs.line_graph(graphs.path(3)).same_graph(SimpleGraph(2, ((1, 2),)))
    star = SimpleGraph(4, ((1, 2), (1, 3), (1, 4)))
    assert graphs.line_graph(star).same_graph(K3)


def test_vertex_replication_examples():
    K2 = graphs.complete_graph(2)
    assert graphs.vertex_replication(K2, (2, 1)).same_graph(graphs.complete_graph(3))
    P3 = graphs.path(3)
    assert graphs.vertex_replication(P3, (1, 1, 1)).same_graph(P3)
    assert graphs.vertex_replication(P3, (0, 1, 1)).same_graph(K2)
    assert graphs.vertex_replication(P3, (0, 0, 0)).d == 0


def test_edge_replication_examples():
    H = graphs.edge_replication(graphs.complete_graph(2), (3,))
    assert len(H.copies) == 3 and H.degree(1) == 3
    G3 = graphs.paper_graph("G3")
    H3 = graphs.edge_replication(G3, (1,) * 9 + (2,))
    assert len(H3.copies) == 11
    assert H3.copy_endpoints()[-2:] == [(5, 6), (5, 6)]


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=5), st.data())
def test_line_graph_of_replication_is_replicated_line_graph(G, data):
    a = data.draw(st.lists(st.integers(0, 2), min_size=G.n, max_size=G.n))
    H = graphs.edge_replication(G, a)
    assert H.line_graph().same_graph(graphs.vertex_replication(graphs.line_graph(G), a))


def test_enumerate_examples():
    C4 = graphs.cycle(4)
    assert len(graphs.enumerate_subsets(C4, graphs.MATCHINGS)) == 7
    assert graphs.enumerate_subsets(graphs.complete_graph(3), graphs.PERFECT_MATCHINGS) == []
    assert len(graphs.enumerate_subsets(graphs.cycle(5), graphs.STABLE_SETS)) == 11


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=6))
def test_enumeration_matches_brute_force(G):
    ms = graphs.enumerate_subsets(G, graphs.MATCHINGS)
    ind = [graphs.indicator(s, G.n) for s in ms]
    assert ind == sorted(ind)
    assert set(ind) == brute_matchings(G)
    pms = {graphs.indicator(s, G.n) for s in graphs.enumerate_subsets(G, graphs.PERFECT_MATCHINGS)}
    assert pms == brute_matchings(G, perfect=True)
    full = {v for v in ind if sum(v) * 2 == G.d}
    assert pms == full
    ss = {graphs.indicator(s, G.d, offset=1) for s in graphs.enumerate_subsets(G, graphs.STABLE_SETS)}
    assert ss == brute_stable_sets(G)


def test_matchings_are_stable_sets_of_line_graph():
    G = graphs.paper_graph("G1")
    L = graphs.line_graph(G)
    ms = {graphs.indicator(s, G.n) for s in graphs.enumerate_subsets(G, graphs.MATCHINGS)}
    ss = {graphs.indicator(s, L.d, offset=1) for s in graphs.enumerate_subsets(L, graphs.STABLE_SETS)}
    assert ms == ss


def test_blocks_examples():
    bowtie = SimpleGraph(5, ((1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)))
    dec = graphs.blocks(bowtie)
    assert len(dec.blocks) == 2 and dec.cut_vertices == {3}
    dec = graphs.blocks(graphs.cycle(6))
    assert len(dec.blocks) == 1 and not dec.cut_vertices
    dec = graphs.blocks(graphs.path(4))
    assert len(dec.blocks) == 3 and dec.cut_vertices == {2, 3}
    assert graphs.blocks(SimpleGraph(3, ())).blocks == ()


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=7))
def test_blocks_partition_edges(G):
    dec = graphs.blocks(G)
    seen = [k for b in dec.blocks for k in b]
    assert sorted(seen) == list(range(G.n))
    for b1, b2 in itertools.combinations(dec.blocks, 2):
        v1 = {v for k in b1 for v in G.edges[k]}
        v2 = {v for k in b2 for v in G.edges[k]}
        shared = v1 & v2
        assert len(shared) <= 1 and shared <= dec.cut_vertices


def test_odd_subdivision_examples():
    K3 = graphs.complete_graph(3)
    assert graphs.is_isomorphic(graphs.odd_subdivision(K3, (3, 1, 1)), graphs.cycle(5))
    G1 = graphs.paper_graph("G1")
    assert graphs.odd_subdivision(G1, (1,) * 8).same_graph(G1)
    with pytest.raises(ValueError):
        graphs.odd_subdivision(K3, (2, 1, 1))
    with pytest.raises(ValueError):
        graphs.odd_subdivision(K3, (0, 1, 1))
    W5 = graphs.wheel(5)
    spoke = W5.edges.index((1, 5))
    lengths = [1] * W5.n
    lengths[spoke] = 3
    S = graphs.odd_subdivision(W5, lengths)
    assert S.d == 7
    assert graphs.is_isomorphic(S, graphs.paper_graph("G7")) or graphs.is_isomorphic(S, graphs.paper_graph("G8"))


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=5), st.data())
def test_odd_subdivision_keeps_bipartiteness(G, data):
    lengths = data.draw(st.lists(st.sampled_from([1, 3, 5]), min_size=G.n, max_size=G.n))
    S = graphs.odd_subdivision(G, lengths)
    assert S.is_bipartite() == G.is_bipartite()
    assert S.n == sum(lengths)


def test_double_with_perfect_matching():
    K2 = graphs.complete_graph(2)
    assert graphs.is_isomorphic(graphs.double_with_perfect_matching(K2), graphs.cycle(4))
    L = graphs.double_with_perfect_matching(graphs.path(3))
    assert (L.d, L.n) == (6, 7)
    ladder = SimpleGraph(6, ((1, 2), (2, 3), (4, 5), (5, 6), (1, 4), (2, 5), (3, 6)))
    assert graphs.is_isomorphic(L, ladder)
    G1 = graphs.paper_graph("G1")
    D = graphs.double_with_perfect_matching(G1)
    assert (D.d, D.n) == (10, 2 * 8 + 5)
    assert D.edges[-5:] == tuple((i, i + 5) for i in range(1, 6))


def test_paper_graphs():
    G1 = graphs.paper_graph("G1")
    assert (G1.d, G1.n) == (5, 8)
    assert G1.edges == ((1, 2), (2, 4), (3, 4), (1, 3), (1, 5), (2, 5), (3, 5), (4, 5))
    assert graphs.is_isomorphic(G1, graphs.wheel(5))
    G2 = graphs.paper_graph("G2")
    assert (G2.d, G2.n) == (6, 9)
    assert graphs.paper_graph("W4").same_graph(graphs.complete_graph(4))
    assert graphs.paper_graph("K_{2,3}").same_graph(graphs.paper_graph("K23"))
    assert graphs.paper_graph("K_{1,1,2}").n == 5
    assert graphs.paper_graph("K_10").d == 10
    for name in graphs.EXAMPLE_NAMES:
        assert graphs.paper_graph(name).d <= 7
    with pytest.raises(ValueError):
        graphs.paper_graph("nonsense")


def test_subgraph_contains_examples():
    assert graphs.subgraph_contains(graphs.complete_graph(5), graphs.paper_graph("G1"))
    assert not graphs.subgraph_contains(graphs.cycle(6), graphs.complete_graph(3))
    assert graphs.subgraph_contains(graphs.complete_bipartite(3, 3), graphs.complete_bipartite(2, 3))


@settings(max_examples=30, deadline=None)
@given(small_graphs(max_vertices=6, min_vertices=2), st.data())
def test_subgraph_contains_reflexive_and_monotone(G, data):
    assert graphs.subgraph_contains(G, G)
    pairs = [p for p in itertools.combinations(G.vertices, 2) if not G.has_edge(*p)]
    if pairs:
        extra = data.draw(st.sampled_from(pairs))
        bigger = SimpleGraph(G.d, G.edges + (extra,))
        assert graphs.subgraph_contains(bigger, G)


def test_all_graphs_counts():
    assert [len(graphs.all_graphs(d)) for d in range(1, 7)] == [1, 2, 4, 11, 34, 156]


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=6), st.randoms())
def test_canonical_form_invariant_under_relabelling(G, rnd):
    perm = list(G.vertices)
    rnd.shuffle(perm)
    H = G.relabel({v: perm[v - 1] for v in G.vertices})
    assert graphs.canonical_form(G) == graphs.canonical_form(H)
    assert graphs.from_canonical(graphs.canonical_form(G)).n == G.n


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=8))
def test_graph6_round_trip(G):
    assert graphs.from_graph6(graphs.to_graph6(G)).same_graph(G)


def test_to_dot():
    text = graphs.to_dot(graphs.path(3), edge_labels=["a", "b"])
    assert "1 -- 2" in text and 'label="b"' in text
