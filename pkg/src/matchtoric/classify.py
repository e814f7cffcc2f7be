"""Structural predicates and predicted omega values for matching polytopes.

For a line perfect graph omega is 2 or 3, decided by the absence or presence
of an odd subdivision of K_{2,3}.  Outside that class the only structural
statement used is a lower bound: an odd subdivision of one of ``G1..G8``
as a subgraph forces omega >= 4.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from . import graphs
from .errors import BudgetExceeded
from .graphs import SimpleGraph

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 12
WITNESS_GRAPHS = graphs.EXAMPLE_NAMES  # G1..G8

GE4 = "≥4 witness"
UNKNOWN = "unknown"


# --------------------------------------------------------------------------
# blocks and line perfectness


def block_type(H: SimpleGraph) -> str:
    """``bipartite``, ``K3``, ``K4``, ``K_{1,1,n}`` (n >= 2) or ``other``.

    ``H`` should be 2-connected or a single edge.
    """
    if H.is_bipartite():
        return "bipartite"
    m = H.d
    if m == 3 and H.n == 3:
        return "K3"
    if m == 4 and H.n == 6:
        return "K4"
    if m >= 4 and H.n == 2 * (m - 2) + 1:
        apexes = [v for v in H.vertices if H.degree(v) == m - 1]
        others = [v for v in H.vertices if H.degree(v) == 2]
        if len(apexes) == 2 and len(others) == m - 2 and H.has_edge(*apexes):
            return f"K_{{1,1,{m - 2}}}"
    return "other"


def _block_is_line_perfect(kind: str) -> bool:
    return kind != "other"


def find_odd_cycle(G: SimpleGraph, min_length: int = 5) -> Optional[List[int]]:
    """An odd cycle of length at least ``min_length`` (vertex list), or None.

    Depth-first from each start vertex ``s`` through vertices larger than
    ``s``, so each cycle is met with its smallest vertex first.
    """
    adj = {v: sorted(G.adjacency[v]) for v in G.vertices}
    for s in G.vertices:
        path = [s]
        on_path = {s}

        def dfs(v: int) -> Optional[List[int]]:
            for w in adj[v]:
                if w == s and len(path) >= min_length and len(path) % 2 == 1:
                    return list(path)
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    found = dfs(w)
                    if found:
                        return found
                    path.pop()
                    on_path.discard(w)
            return None

        found = dfs(s)
        if found:
            return found
    return None


@dataclass
class LinePerfectResult:
    line_perfect: bool
    block_types: List[str]
    odd_cycle: Optional[List[int]] = None

    def __bool__(self) -> bool:
        return self.line_perfect


def is_line_perfect(G: SimpleGraph) -> LinePerfectResult:
    """Every block bipartite, K4 or K_{1,1,n} (K3 included); otherwise an odd
    cycle of length >= 5 from the first offending block is returned."""
    dec = graphs.blocks(G)
    kinds = []
    witness = None
    for idx, H in zip(dec.blocks, dec.subgraphs(G)):
        kind = block_type(H)
        kinds.append(kind)
        if witness is None and not _block_is_line_perfect(kind):
            cyc = find_odd_cycle(H)
            if cyc is None:
                raise AssertionError("block classified as not line perfect has no long odd cycle")
            verts = sorted({v for k in idx for v in G.edges[k]})
            witness = [verts[v - 1] for v in cyc]
    return LinePerfectResult(witness is None, kinds, witness)


# --------------------------------------------------------------------------
# even thetas (odd subdivisions of K_{2,3})


def _theta_general(G: SimpleGraph) -> Optional[List[List[int]]]:
    adj = {v: sorted(G.adjacency[v]) for v in G.vertices}
    for u, v in itertools.combinations(G.vertices, 2):
        if G.degree(u) < 3 or G.degree(v) < 3:
            continue
        found = _three_even_paths(adj, u, v)
        if found:
            return found
    return None


def _three_even_paths(adj, u: int, v: int) -> Optional[List[List[int]]]:
    """Three internally disjoint even ``u``-``v`` paths of length >= 2.

    Paths are found in increasing order of their second vertex, which
    removes the 3! orderings of the same triple.
    """
    used = {u, v}
    paths: List[List[int]] = []

    def extend(path: List[int], need: int, first_min: int) -> Optional[List[List[int]]]:
        x = path[-1]
        for w in adj[x]:
            if len(path) == 1 and w <= first_min:
                continue
            if w == v:
                if len(path) % 2 == 0:
                    paths.append(path + [v])
                    if need == 1:
                        return list(paths)
                    res = extend([u], need - 1, path[1])
                    if res:
                        return res
                    paths.pop()
                continue
            if w in used:
                continue
            used.add(w)
            path.append(w)
            res = extend(path, need, first_min)
            path.pop()
            used.discard(w)
            if res:
                return res
        return None

    return extend([u], 3, 0)


def _theta_bipartite(G: SimpleGraph) -> Optional[List[List[int]]]:
    parts = G.bipartition()
    assert parts is not None
    g = G.to_networkx()
    for side in parts:
        for u, v in itertools.combinations(side, 2):
            if G.degree(u) < 3 or G.degree(v) < 3:
                continue
            if nx.has_path(g, u, v) and nx.algorithms.connectivity.local_node_connectivity(g, u, v) >= 3:
                paths = list(nx.node_disjoint_paths(g, u, v))
                paths.sort(key=lambda p: (len(p), p))
                return [list(p) for p in paths[:3]]
    return None


def has_odd_K23_subdivision(G: SimpleGraph, method: str = "auto") -> Optional[List[List[int]]]:
    """Three internally disjoint even paths between two vertices, or None.

    ``method``: ``general`` (exhaustive path search, at most 12 vertices),
    ``bipartite`` (Menger by max-flow, bipartite graphs only) or ``auto``.
    """
    bip = G.is_bipartite()
    if method == "auto":
        method = "bipartite" if bip else "general"
    if method == "bipartite":
        if not bip:
            raise ValueError("the flow method needs a bipartite graph")
        return _theta_bipartite(G)
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    if G.d > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search is limited to {EXHAUSTIVE_LIMIT} vertices")
    return _theta_general(G)


def _theta_line_perfect(G: SimpleGraph) -> Optional[List[List[int]]]:
    """Theta search block by block, for line perfect graphs of any size.

    A theta is 2-connected, so it lies in one block.  K3 and K4 are too small,
    and K_{1,1,n} has one through its two apexes exactly when n >= 3.
    """
    for idx in graphs.blocks(G).blocks:
        B = G.edge_subgraph(idx, relabel=False)
        kind = block_type(G.edge_subgraph(idx))
        if kind == "bipartite":
            found = _theta_bipartite(B)
            if found:
                return found
        elif kind.startswith("K_{1,1,") and kind != "K_{1,1,2}":
            u, v = sorted(w for w in B.vertices if B.degree(w) == B.n // 2 + 1 and B.degree(w) > 2)[:2]
            mids = [w for w in B.vertices if B.degree(w) == 2][:3]
            return [[u, w, v] for w in mids]
    return None


# --------------------------------------------------------------------------
# odd-subdivision witnesses


def odd_subdivisions_up_to(P: SimpleGraph, max_vertices: int):
    """Odd subdivisions of ``P`` with at most ``max_vertices`` vertices.

    Yields ``(lengths, graph)``, fewest new vertices first.
    """
    spare = (max_vertices - P.d) // 2
    for extra in range(0, max(spare, -1) + 1):
        for combo in itertools.combinations_with_replacement(range(P.n), extra):
            lengths = [1] * P.n
            for k in combo:
                lengths[k] += 2
            yield tuple(lengths), graphs.odd_subdivision(P, lengths)


def find_odd_subdivision_witness(G: SimpleGraph, names: Sequence[str] = WITNESS_GRAPHS) -> Optional[dict]:
    """First ``G_i`` (in order) having an odd subdivision inside ``G``."""
    for name in names:
        P = graphs.paper_graph(name)
        if P.n > G.n or P.d > G.d:
            continue
        seen = set()
        for lengths, S in odd_subdivisions_up_to(P, G.d):
            if S.n > G.n:
                continue
            key = graphs.canonical_form(S) if S.d <= graphs.CANONICAL_LIMIT else None
            if key is not None:
                if key in seen:
                    continue
                seen.add(key)
            emb = graphs.find_embedding(G, S)
            if emb is not None:
                return {"graph": name, "lengths": list(lengths), "embedding": {str(k): v for k, v in sorted(emb.items())}}
    return None


# --------------------------------------------------------------------------
# predictions


@dataclass
class ClassificationReport:
    graph6: str
    d: int
    n_edges: int
    bipartite: bool
    line_perfect: bool
    has_odd_K23_subdivision: Optional[bool]
    block_types: List[str]
    predicted_omega: object  # 2, 3, GE4 or UNKNOWN
    witness: Optional[object] = None

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "d": self.d,
            "edges": self.n_edges,
            "bipartite": self.bipartite,
            "line_perfect": self.line_perfect,
            "has_odd_K23_subdivision": self.has_odd_K23_subdivision,
            "block_types": self.block_types,
            "predicted_omega": self.predicted_omega,
            "witness": self.witness,
        }


def predicted_omega(G: SimpleGraph) -> ClassificationReport:
    lp = is_line_perfect(G)
    bip = G.is_bipartite()
    theta = None
    if lp.line_perfect:
        theta = has_odd_K23_subdivision(G) if (bip or G.d <= EXHAUSTIVE_LIMIT) else _theta_line_perfect(G)
        pred: object = 3 if theta else 2
        witness: object = {"theta_paths": theta} if theta else None
        has_theta: Optional[bool] = bool(theta)
    else:
        w = find_odd_subdivision_witness(G)
        pred = GE4 if w else UNKNOWN
        witness = {"odd_cycle": lp.odd_cycle, "subdivision": w}
        has_theta = None
        if G.d <= EXHAUSTIVE_LIMIT:
            has_theta = has_odd_K23_subdivision(G) is not None
    return ClassificationReport(
        graph6=graphs.to_graph6(G),
        d=G.d,
        n_edges=G.n,
        bipartite=bip,
        line_perfect=lp.line_perfect,
        has_odd_K23_subdivision=has_theta,
        block_types=lp.block_types,
        predicted_omega=pred,
        witness=witness,
    )


def predicted_matches(predicted: object, omega: int) -> bool:
    if predicted == GE4:
        return omega >= 4
    if predicted == UNKNOWN:
        return True
    return predicted == omega


# --------------------------------------------------------------------------
# tables


@dataclass
class ClassRow:
    report: ClassificationReport
    omega: Optional[int] = None
    contains_G1: bool = False
    status: str = "exact"  # exact | skipped | budget

    def to_json(self) -> dict:
        out = self.report.to_json()
        out.update({"omega": self.omega, "contains_G1": self.contains_G1, "status": self.status})
        return out


def _exact(G: SimpleGraph, max_points: Optional[int], max_pairs: Optional[int], use_blocks: bool):
    from .toric import markov
    from .toric.points import MATCHING, lattice_points

    if max_points is not None and len(graphs.enumerate_subsets(G, graphs.MATCHINGS)) > max_points:
        return None, "skipped"
    try:
        if use_blocks:
            return markov.omega_via_blocks(G, max_pairs), "exact"
        return markov.omega(lattice_points(G, MATCHING), max_pairs).omega, "exact"
    except BudgetExceeded:
        return None, "budget"


def classify_small(
    d: int,
    max_points: Optional[int] = None,
    max_pairs: Optional[int] = None,
    use_blocks: bool = False,
) -> List[ClassRow]:
    """All graphs on ``d`` vertices up to isomorphism with predicted and
    (where ``max_points`` allows) exact omega of the matching polytope."""
    if d > 7:
        raise ValueError("classification tables are limited to d <= 7")
    G1 = graphs.paper_graph("G1")
    rows = []
    for G in graphs.all_graphs(d):
        rep = predicted_omega(G)
        om, status = _exact(G, max_points, max_pairs, use_blocks)
        rows.append(ClassRow(rep, om, graphs.subgraph_contains(G, G1), status))
    return rows


def check_small_table(d: int, rows: Sequence[ClassRow]) -> List[str]:
    """Statements the table must satisfy; returns the violations."""
    bad = []
    for row in rows:
        if row.omega is None:
            continue
        g6 = row.report.graph6
        if not predicted_matches(row.report.predicted_omega, row.omega):
            bad.append(f"{g6}: predicted {row.report.predicted_omega}, exact {row.omega}")
        if d <= 4 and row.omega != 2:
            bad.append(f"{g6}: omega {row.omega} on {d} vertices")
        if d == 5 and (row.omega == 4) != row.contains_G1:
            bad.append(f"{g6}: omega {row.omega}, contains G1 = {row.contains_G1}")
        if d == 5 and row.omega > 4:
            bad.append(f"{g6}: omega {row.omega} above 4")
    return bad


@dataclass
class WheelRow:
    d: int
    predicted: object
    omega: Optional[int]
    witness: Optional[dict]
    status: str

    def to_json(self) -> dict:
        return {"d": self.d, "predicted": self.predicted, "omega": self.omega,
                "witness": self.witness, "status": self.status}


def wheel_experiment(d_max: int, exact_max: int = 6, max_pairs: Optional[int] = None) -> List[WheelRow]:
    """W_4..W_{d_max}: exact omega up to ``exact_max`` vertices, and for odd
    ``d`` the odd subdivision of ``W_5 = G1`` found inside ``W_d``."""
    if d_max < 4:
        raise ValueError("wheels start at d = 4")
    rows = []
    for d in range(4, d_max + 1):
        W = graphs.wheel(d)
        witness = None
        predicted: object = UNKNOWN
        if d % 2:
            witness = find_odd_subdivision_witness(W, ("G1",))
            predicted = GE4 if witness else UNKNOWN
        else:
            rep = predicted_omega(W)
            predicted = rep.predicted_omega
        om, status = (None, "skipped")
        if d <= exact_max:
            om, status = _exact(W, None, max_pairs, False)
        rows.append(WheelRow(d, predicted, om, witness, status))
    return rows
