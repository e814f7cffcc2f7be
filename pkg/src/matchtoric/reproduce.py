"""Fixed computations with known answers, grouped into named suites.

Each check records what was expected and what was computed; a suite passes
when all of its checks do.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from . import classify, colorings, graphs
from .toric import fibers, flows, markov
from .toric.points import MATCHING, lattice_points


@dataclass
class Check:
    name: str
    expected: object
    got: object

    @property
    def passed(self) -> bool:
        return self.expected == self.got

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "got": self.got, "pass": self.passed}


@dataclass
class Scoreboard:
    suite: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected, got) -> Check:
        c = Check(name, expected, got)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _omega(G) -> int:
    return markov.omega(lattice_points(G, MATCHING)).omega


def example61() -> Scoreboard:
    sb = Scoreboard("example61")
    sb.add("omega(M_G1)", 4, _omega(graphs.paper_graph("G1")))
    sb.add("omega(M_G2)", 4, _omega(graphs.paper_graph("G2")))
    for name in ("G1", "G2", "G3"):
        f, g = colorings.example_pair(name)
        sb.add(f"{name} pair ~_3", False, colorings.decide_equiv_r(f, g, 3).equivalent)
        res = colorings.decide_equiv_r(f, g, 4)
        ok = res.equivalent and res.certificate is not None and res.certificate.verify(4)
        sb.add(f"{name} pair ~_4 with replayed certificate", True, ok)
    G3 = graphs.paper_graph("G3")
    pairs = colorings.sample_edge_coloring_pairs(G3, 4, 20, seed=0)
    n_ok = sum(colorings.decide_equiv_r(a, b, 4).equivalent for a, b in pairs)
    sb.add("sampled 4-edge-coloring pairs of G3 that are ~_4", 20, n_ok)
    return sb


def smallgraphs() -> Scoreboard:
    sb = Scoreboard("smallgraphs")
    expected_counts = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}
    for d in range(1, 6):
        rows = classify.classify_small(d)
        sb.add(f"graphs on {d} vertices", expected_counts[d], len(rows))
        sb.add(f"violations on {d} vertices", [], classify.check_small_table(d, rows))
    return sb


def wheels() -> Scoreboard:
    sb = Scoreboard("wheels")
    rows = {row.d: row for row in classify.wheel_experiment(7, exact_max=6)}
    sb.add("omega(M_W4)", 2, rows[4].omega)
    sb.add("omega(M_W6)", 2, rows[6].omega)
    sb.add("omega(M_W5)", 4, rows[5].omega)
    sb.add("W5 odd-subdivision witness", classify.GE4, rows[5].predicted)
    sb.add("W7 odd-subdivision witness", classify.GE4, rows[7].predicted)
    return sb


def bipartite() -> Scoreboard:
    sb = Scoreboard("bipartite")
    K33 = lattice_points(graphs.complete_bipartite(3, 3), MATCHING)
    sb.add("verify_omega_le(M_K33, 3, 5) passes", True, fibers.verify_omega_le(K33, 3, 5).passed)
    G1 = lattice_points(graphs.paper_graph("G1"), MATCHING)
    rep = fibers.verify_omega_le(G1, 3, 4)
    sb.add("verify_omega_le(M_G1, 3, 4) fails with a witness", True,
           (not rep.passed) and rep.counterexample is not None)
    for name, want in (("K23", 3), ("C4", 2), ("C6", 2), ("P5", 2)):
        G = graphs.paper_graph(name)
        sb.add(f"omega(M_{name})", want, _omega(G))
        sb.add(f"predicted omega {name}", want, classify.predicted_omega(G).predicted_omega)
    return sb


def random_bipartite_graphs(count: int, max_edges: int, seed: int) -> List[graphs.SimpleGraph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        allowed = [(i, m + j) for i in range(1, m + 1) for j in range(1, n + 1)]
        k = rng.randint(1, min(max_edges, len(allowed)))
        out.append(graphs.SimpleGraph(m + n, tuple(sorted(rng.sample(allowed, k)))))
    return out


def flow_check(G: graphs.SimpleGraph) -> Dict[str, object]:
    """Flow count, matching count, and whether projection is a bijection."""
    N = flows.flow_polytope_of_bipartite(G)
    pts = flows.flow_lattice_points(N)
    matchings = {graphs.indicator(s, G.n) for s in graphs.enumerate_subsets(G, graphs.MATCHINGS)}
    projected = [flows.flow_to_matching(N, x) for x in pts]
    return {
        "flows": len(pts),
        "matchings": len(matchings),
        "bijection": len(set(projected)) == len(projected) and set(projected) == matchings,
    }


def flow() -> Scoreboard:
    sb = Scoreboard("flow")
    corpus = [graphs.path(2), graphs.cycle(4), graphs.complete_bipartite(2, 3)]
    corpus += random_bipartite_graphs(10, 8, seed=0)
    for G in corpus:
        res = flow_check(G)
        sb.add(f"{graphs.to_graph6(G)} flows = matchings, bijective", [res["matchings"], True],
               [res["flows"], res["bijection"]])
    return sb


SUITES: Dict[str, Callable[[], Scoreboard]] = {
    "example61": example61,
    "smallgraphs": smallgraphs,
    "wheels": wheels,
    "bipartite": bipartite,
    "flow": flow,
}


def run_suite(name: str) -> Scoreboard:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name]()
