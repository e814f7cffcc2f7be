"""Acceptance criteria, one test each.  Every test prints a single
``PASS criterion N: ...`` or ``FAIL criterion N: ...`` line to the terminal."""

import random
import time

import pytest

from matchtoric import classify, graphs
from matchtoric.colorings import decide_equiv_r, example_pair, sample_edge_coloring_pairs
from matchtoric.toric import (
    flow_lattice_points,
    flow_polytope_of_bipartite,
    flow_to_matching,
    generator_counts_by_fibers,
    graph_omega,
    lattice_points,
    markov_basis,
    minimalize,
    verify_omega_le,
)

from oracles import brute_matchings, random_graph


class Outcome:
    def __init__(self):
        self.number = None
        self.text = ""
        self.ok = False
        self.t0 = time.perf_counter()

    def start(self, number, text):
        self.number, self.text, self.t0 = number, text, time.perf_counter()


@pytest.fixture
def outcome(capsys):
    o = Outcome()
    yield o
    dt = time.perf_counter() - o.t0
    with capsys.disabled():
        print(f"\n{'PASS' if o.ok else 'FAIL'} criterion {o.number}: {o.text} ({dt:.1f}s)")


def test_criterion_01_omega_G1(outcome):
    outcome.start(1, "omega(M_G1) = 4 via markov_basis + minimalize, under 10 min")
    A = lattice_points(graphs.paper_graph("G1"), "matching")
    t0 = time.perf_counter()
    rep = minimalize(markov_basis(A), A)
    assert rep.omega == 4
    assert time.perf_counter() - t0 < 600
    outcome.ok = True


def test_criterion_02_G1_pair(outcome):
    outcome.start(2, "G1 pair: not 3-equivalent, 4-equivalent with replayable certificate")
    f, g = example_pair("G1")
    t0 = time.perf_counter()
    assert decide_equiv_r(f, g, 3).equivalent is False
    res = decide_equiv_r(f, g, 4)
    assert res.equivalent is True
    cert = res.certificate
    assert cert.colorings[0] == f and cert.colorings[-1] == g and cert.verify(4)
    assert time.perf_counter() - t0 < 60
    outcome.ok = True


def test_criterion_03_G3(outcome):
    outcome.start(3, "G3 doubled middle rung pair not 3-equivalent; 20 plain G3 pairs 4-equivalent")
    f, g = example_pair("G3")
    assert max(f.multigraph.multiplicity) == 2
    assert decide_equiv_r(f, g, 3).equivalent is False
    pairs = sample_edge_coloring_pairs(graphs.paper_graph("G3"), 4, 20, seed=0)
    assert len(pairs) == 20
    for f1, f2 in pairs:
        res = decide_equiv_r(f1, f2, 4)
        assert res.equivalent is True and res.certificate.verify(4)
    outcome.ok = True


def test_criterion_04_spot_checks(outcome):
    outcome.start(4, "omega(K23) = 3, omega(C4) = omega(C6) = omega(P5) = 2, predictions agree")
    cases = [
        (graphs.complete_bipartite(2, 3), 3),
        (graphs.cycle(4), 2),
        (graphs.cycle(6), 2),
        (graphs.path(5), 2),
    ]
    for G, expected in cases:
        assert graph_omega(G).omega == expected
        assert classify.predicted_omega(G).predicted_omega == expected
    outcome.ok = True


def test_criterion_05_up_to_four_vertices(outcome):
    outcome.start(5, "omega = 2 for all 11 graphs on 4 vertices and all graphs on at most 3")
    for d, count in ((1, 1), (2, 2), (3, 4), (4, 11)):
        gs = graphs.all_graphs(d)
        assert len(gs) == count
        for G in gs:
            assert graph_omega(G).omega == 2
    outcome.ok = True


def test_criterion_06_five_vertices(outcome):
    outcome.start(6, "d = 5: 34 classes, omega = 4 iff G contains G1, otherwise omega <= 3")
    G1 = graphs.paper_graph("G1")
    gs = graphs.all_graphs(5)
    assert len(gs) == 34
    for G in gs:
        w = graph_omega(G).omega
        if graphs.subgraph_contains(G, G1):
            assert w == 4
        else:
            assert w <= 3
    outcome.ok = True


def test_criterion_07_wheels(outcome):
    outcome.start(7, "omega(W4) = omega(W6) = 2; W5 and W7 report >=4 by witness, W5 exact")
    rows = {r.d: r for r in classify.wheel_experiment(7, exact_max=6)}
    assert rows[4].omega == 2 and rows[6].omega == 2
    for d in (5, 7):
        assert rows[d].predicted == classify.GE4
        w = rows[d].witness
        S = graphs.odd_subdivision(graphs.paper_graph("G1"), w["lengths"])
        assert graphs.subgraph_contains(graphs.wheel(d), S)
    assert rows[5].omega == 4
    outcome.ok = True


def test_criterion_08_verify_bounds(outcome):
    outcome.start(8, "verify_omega_le(K33, 3, 5) passes; verify_omega_le(G1, 3, 4) fails with witness")
    K33 = lattice_points(graphs.complete_bipartite(3, 3), "matching")
    assert verify_omega_le(K33, 3, 5).passed is True
    G1 = lattice_points(graphs.paper_graph("G1"), "matching")
    rep = verify_omega_le(G1, 3, 4)
    assert rep.passed is False
    ce = rep.counterexample
    assert ce["degree"] == 4 and ce["components"] >= 2 and len(ce["witness"]) == 2
    outcome.ok = True


def test_criterion_09_fiber_oracle(outcome):
    outcome.start(9, "20 random graphs on <= 5 vertices: minimal counts equal fiber recount")
    rng = random.Random(2024)
    for _ in range(20):
        G = random_graph(rng, 5)
        A = lattice_points(G, "matching")
        rep = minimalize(markov_basis(A), A)
        top = max(rep.counts, default=2)
        oracle = generator_counts_by_fibers(A, top)
        for k in range(2, top + 1):
            assert rep.counts.get(k, 0) == oracle[k]
    outcome.ok = True


def test_criterion_10_flows(outcome):
    outcome.start(10, "10 random bipartite graphs with <= 8 edges: flows biject with matchings")
    rng = random.Random(10)
    seen = 0
    while seen < 10:
        G = random_graph(rng, 8, 8)
        if not G.is_bipartite():
            continue
        seen += 1
        N = flow_polytope_of_bipartite(G)
        pts = flow_lattice_points(N)
        matchings = graphs.enumerate_subsets(G, graphs.MATCHINGS)
        assert len(pts) == len(matchings)
        projected = [flow_to_matching(N, x) for x in pts]
        assert len(set(projected)) == len(projected)
        assert set(projected) == brute_matchings(G)
    outcome.ok = True


def test_criterion_11_perfect_matching_face(outcome):
    outcome.start(11, "graphs on 4 and 6 vertices with a perfect matching, <= 9 edges: omega(P) <= omega(M)")
    checked = 0
    for d in (4, 6):
        for G in graphs.all_graphs(d):
            if G.n > 9 or not graphs.enumerate_subsets(G, graphs.PERFECT_MATCHINGS):
                continue
            checked += 1
            assert graph_omega(G, "perfect_matching").omega <= graph_omega(G).omega
    assert checked > 0
    outcome.ok = True


def _subdivide_one_edge(rng, G):
    lengths = [1] * G.n
    lengths[rng.randrange(G.n)] = 3
    return graphs.odd_subdivision(G, lengths)


def test_criterion_12_monotonicity(outcome):
    outcome.start(12, "30 random subgraph and odd subdivision pairs are monotone")
    rng = random.Random(12)
    pairs = []
    # The generators keep every graph below 32 lattice points, inside the exact range.
    while len(pairs) < 15:
        G = random_graph(rng, 6, 8, min_vertices=3)
        if G.n == 0 or lattice_points(G, "matching").n > 32:
            continue
        keep = [k for k in range(G.n) if rng.random() < 0.6]
        pairs.append(("subgraph", G.edge_subgraph(keep, relabel=False), G))
    while len(pairs) < 30:
        G = random_graph(rng, 5, 6, min_vertices=3)
        if G.n == 0:
            continue
        S = _subdivide_one_edge(rng, G)
        if lattice_points(S, "matching").n > 32:
            continue
        pairs.append(("subdivision", G, S))
    for kind, small, big in pairs:
        assert graph_omega(small).omega <= graph_omega(big).omega, (kind, small, big)
    outcome.ok = True
