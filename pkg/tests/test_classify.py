import itertools
import random

import pytest
from hypothesis import given, settings

from matchtoric import classify, graphs
from matchtoric.graphs import SimpleGraph
from matchtoric.toric import graph_omega, lattice_points

from oracles import even_theta_by_paths, has_long_odd_cycle, random_graph
from test_graphs import small_graphs


def test_line_perfect_examples():
    res = classify.is_line_perfect(graphs.cycle(5))
    assert not res.line_perfect and sorted(res.odd_cycle) == [1, 2, 3, 4, 5]
    assert classify.is_line_perfect(graphs.complete_graph(4)).line_perfect
    assert classify.is_line_perfect(graphs.complete_bipartite(3, 4)).line_perfect
    assert classify.is_line_perfect(graphs.complete_tripartite_11n(4)).line_perfect
    assert not classify.is_line_perfect(graphs.complete_graph(5)).line_perfect


def test_block_types():
    assert classify.block_type(graphs.complete_graph(3)) == "K3"
    assert classify.block_type(graphs.complete_graph(4)) == "K4"
    assert classify.block_type(graphs.complete_tripartite_11n(2)) == "K_{1,1,2}"
    assert classify.block_type(graphs.complete_tripartite_11n(5)) == "K_{1,1,5}"
    assert classify.block_type(graphs.cycle(6)) == "bipartite"
    assert classify.block_type(graphs.wheel(6)) == "other"


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_vertices=7))
def test_line_perfect_agrees_with_odd_cycle_scan(G):
    res = classify.is_line_perfect(G)
    assert res.line_perfect == (not has_long_odd_cycle(G))
    if not res.line_perfect:
        cyc = res.odd_cycle
        assert len(cyc) % 2 == 1 and len(cyc) >= 5 and len(set(cyc)) == len(cyc)
        assert all(G.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def test_theta_examples():
    assert classify.has_odd_K23_subdivision(graphs.complete_bipartite(2, 3))
    assert not classify.has_odd_K23_subdivision(graphs.cycle(6))
    assert classify.has_odd_K23_subdivision(graphs.complete_bipartite(3, 3))
    assert classify.has_odd_K23_subdivision(graphs.complete_bipartite(3, 3), method="general")
    with pytest.raises(ValueError):
        classify.has_odd_K23_subdivision(graphs.complete_graph(3), method="bipartite")


def _check_theta_paths(G, paths):
    u, v = paths[0][0], paths[0][-1]
    inner = [set(p[1:-1]) for p in paths]
    assert len(paths) == 3
    for p in paths:
        assert p[0] == u and p[-1] == v and (len(p) - 1) % 2 == 0 and len(p) >= 3
        assert all(G.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))
    for a, b in itertools.combinations(inner, 2):
        assert a.isdisjoint(b)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=7))
def test_theta_search_agrees_with_path_enumeration(G):
    found = classify.has_odd_K23_subdivision(G, method="general")
    assert bool(found) == even_theta_by_paths(G)
    if found:
        _check_theta_paths(G, found)


def test_flow_and_exhaustive_theta_agree_on_bipartite_graphs():
    rng = random.Random(11)
    count = 0
    while count < 60:
        G = random_graph(rng, 9, 14)
        if not G.is_bipartite():
            continue
        count += 1
        flow = classify.has_odd_K23_subdivision(G, method="bipartite")
        general = classify.has_odd_K23_subdivision(G, method="general")
        assert bool(flow) == bool(general)
        if flow:
            _check_theta_paths(G, flow)


def test_theta_is_an_odd_subdivision_of_K23():
    # Each witness splits back into an odd subdivision of K_{2,3}.
    K23 = graphs.complete_bipartite(2, 3)
    for lengths in ((1, 3, 1, 1, 1, 1), (3, 3, 1, 1, 1, 1), (1, 1, 1, 1, 5, 1)):
        S = graphs.odd_subdivision(K23, lengths)
        assert classify.has_odd_K23_subdivision(S)


def test_predicted_omega_examples():
    assert classify.predicted_omega(graphs.cycle(6)).predicted_omega == 2
    assert classify.predicted_omega(graphs.complete_bipartite(2, 3)).predicted_omega == 3
    rep = classify.predicted_omega(graphs.complete_graph(5))
    assert rep.predicted_omega == classify.GE4 and rep.witness["subdivision"]["graph"] == "G1"
    assert classify.predicted_omega(graphs.cycle(5)).predicted_omega == classify.UNKNOWN
    assert classify.predicted_omega(graphs.complete_tripartite_11n(2)).predicted_omega == 2
    assert classify.predicted_omega(graphs.complete_tripartite_11n(3)).predicted_omega == 3


def test_witness_graphs_are_not_line_perfect():
    for name in graphs.EXAMPLE_NAMES:
        G = graphs.paper_graph(name)
        rep = classify.predicted_omega(G)
        assert not rep.line_perfect and rep.predicted_omega == classify.GE4


@settings(max_examples=25, deadline=None)
@given(small_graphs(max_vertices=6))
def test_prediction_matches_engine(G):
    if lattice_points(G, "matching").n > 30:
        return
    rep = classify.predicted_omega(G)
    w = graph_omega(G).omega
    assert classify.predicted_matches(rep.predicted_omega, w)
    if rep.line_perfect:
        assert rep.predicted_omega == w


def test_odd_subdivisions_up_to():
    G1 = graphs.paper_graph("G1")
    subs = list(classify.odd_subdivisions_up_to(G1, 7))
    assert subs[0][0] == (1,) * 8
    assert len(subs) == 1 + 8
    assert all(S.d <= 7 for _, S in subs)


def test_classify_small_tables():
    for d in range(1, 5):
        rows = classify.classify_small(d)
        assert all(r.omega == 2 for r in rows)
        assert classify.check_small_table(d, rows) == []


def test_wheel_rows_small():
    rows = classify.wheel_experiment(5, exact_max=5)
    assert [r.omega for r in rows] == [2, 4]
    assert rows[1].predicted == classify.GE4
    with pytest.raises(ValueError):
        classify.wheel_experiment(3)


def _triangle_chain(count, start=1):
    # Triangles glued at cut vertices: line perfect, not bipartite, no theta.
    edges, v = [], start
    for _ in range(count):
        edges += [(v, v + 1), (v, v + 2), (v + 1, v + 2)]
        v += 2
    return edges, v


def test_block_theta_search_on_large_line_perfect_graphs():
    edges, last = _triangle_chain(7)
    G = SimpleGraph(last, tuple(sorted(edges)))
    assert G.d > 12
    rep = classify.predicted_omega(G)
    assert rep.line_perfect and rep.predicted_omega == 2
    # Hang K_{1,1,3} off the end: apexes last and last+1, leaves last+2..last+4.
    extra = [(last, last + 1)] + [(a, w) for a in (last, last + 1) for w in range(last + 2, last + 5)]
    H = SimpleGraph(last + 4, tuple(sorted(edges + extra)))
    rep = classify.predicted_omega(H)
    assert rep.line_perfect and rep.predicted_omega == 3
    _check_theta_paths(H, rep.witness["theta_paths"])


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_vertices=8))
def test_block_theta_search_agrees_on_line_perfect_graphs(G):
    if not classify.is_line_perfect(G).line_perfect:
        return
    blockwise = classify._theta_line_perfect(G)
    assert bool(blockwise) == bool(classify.has_odd_K23_subdivision(G, method="general"))
    if blockwise:
        _check_theta_paths(G, blockwise)
