"""Integer flows on a network with demands and capacity windows.

The matching polytope of a bipartite graph ``G`` on ``V1 | V2`` is a flow
polytope: every vertex sends (or receives) one unit, either along a matching
edge or through an extra node ``v0`` standing for "unmatched".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..graphs import SimpleGraph

Arrow = Tuple[int, int]


@dataclass(frozen=True)
class FlowNetwork:
    """Quiver ``Q`` with demands ``theta`` and bounds ``lower <= x <= upper``.

    Conservation reads ``theta(v) = inflow(v) - outflow(v)``.  For networks
    built from a bipartite graph the first ``n_edges`` arrows are the graph
    edges, in edge order, oriented from ``V1`` to ``V2``.
    """

    nodes: Tuple[int, ...]
    arrows: Tuple[Arrow, ...]
    theta: Tuple[int, ...]
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    n_edges: int = 0

    def __post_init__(self):
        if len(self.theta) != len(self.nodes):
            raise ValueError("one demand per node required")
        if not (len(self.lower) == len(self.upper) == len(self.arrows)):
            raise ValueError("one lower and one upper bound per arrow required")
        known = set(self.nodes)
        for a, b in self.arrows:
            if a not in known or b not in known:
                raise ValueError(f"arrow {(a, b)} has an unknown endpoint")
        if any(l > u for l, u in zip(self.lower, self.upper)):
            raise ValueError("lower bound above upper bound")

    def node_index(self) -> dict:
        return {v: i for i, v in enumerate(self.nodes)}

    def is_flow(self, x: Sequence[int]) -> bool:
        if len(x) != len(self.arrows):
            return False
        if any(not (l <= v <= u) for v, l, u in zip(x, self.lower, self.upper)):
            return False
        net = [0] * len(self.nodes)
        idx = self.node_index()
        for (a, b), v in zip(self.arrows, x):
            net[idx[a]] -= v
            net[idx[b]] += v
        return tuple(net) == self.theta


def flow_polytope_of_bipartite(
    G: SimpleGraph, bipartition: Optional[Tuple[Sequence[int], Sequence[int]]] = None
) -> FlowNetwork:
    """Network whose 0/1 flows are the matchings of the bipartite graph ``G``.

    Nodes are ``V1`` (sorted), ``V2`` (sorted) and ``v0``, labelled ``0``.
    Demands are -1 on ``V1``, +1 on ``V2`` and ``|V1| - |V2|`` on ``v0``,
    which is what conservation forces: ``v0`` takes in the unmatched ``V1``
    vertices and feeds the unmatched ``V2`` vertices.
    """
    if bipartition is None:
        parts = G.bipartition()
        if parts is None:
            raise ValueError("graph is not bipartite")
        V1, V2 = parts
    else:
        V1, V2 = bipartition
    V1, V2 = sorted(V1), sorted(V2)
    if set(V1) & set(V2) or set(V1) | set(V2) != set(G.vertices):
        raise ValueError("bipartition must split the vertex set")
    side = {v: 1 for v in V1}
    side.update({v: 2 for v in V2})
    arrows: List[Arrow] = []
    for a, b in G.edges:
        if side[a] == side[b]:
            raise ValueError(f"edge {(a, b)} lies inside one part")
        arrows.append((a, b) if side[a] == 1 else (b, a))
    arrows += [(i, 0) for i in V1]
    arrows += [(0, j) for j in V2]
    nodes = tuple(V1 + V2 + [0])
    theta = tuple([-1] * len(V1) + [1] * len(V2) + [len(V1) - len(V2)])
    m = len(arrows)
    return FlowNetwork(nodes, tuple(arrows), theta, (0,) * m, (1,) * m, n_edges=G.n)


def flow_lattice_points(N: FlowNetwork) -> List[Tuple[int, ...]]:
    """All integer flows of ``N``, in lexicographic order.

    Depth-first over arrows; after each choice every node checks that its
    remaining demand is still reachable with its undecided arrows.
    """
    idx = N.node_index()
    m = len(N.arrows)
    tail = [idx[a] for a, _ in N.arrows]
    head = [idx[b] for _, b in N.arrows]
    # need[v]: inflow - outflow still to be realised at v.
    need = list(N.theta)
    for k in range(m):
        need[head[k]] -= N.lower[k]
        need[tail[k]] += N.lower[k]
    span = [u - l for l, u in zip(N.lower, N.upper)]
    # Remaining capacity into / out of each node over arrows k.. (suffix sums).
    cap_in = [[0] * len(N.nodes) for _ in range(m + 1)]
    cap_out = [[0] * len(N.nodes) for _ in range(m + 1)]
    for k in range(m - 1, -1, -1):
        cap_in[k] = list(cap_in[k + 1])
        cap_out[k] = list(cap_out[k + 1])
        cap_in[k][head[k]] += span[k]
        cap_out[k][tail[k]] += span[k]

    out: List[Tuple[int, ...]] = []
    x = [0] * m

    def feasible(v: int, k: int) -> bool:
        return -cap_out[k][v] <= need[v] <= cap_in[k][v]

    def rec(k: int) -> None:
        if k == m:
            if not any(need):
                out.append(tuple(l + d for l, d in zip(N.lower, x)))
            return
        t, h = tail[k], head[k]
        for d in range(span[k] + 1):
            x[k] = d
            need[h] -= d
            need[t] += d
            if feasible(h, k + 1) and feasible(t, k + 1):
                rec(k + 1)
            need[h] += d
            need[t] -= d
        x[k] = 0

    if all(feasible(v, 0) for v in range(len(N.nodes))):
        rec(0)
    return out


def flow_to_matching(N: FlowNetwork, flow: Sequence[int]) -> Tuple[int, ...]:
    """Project a flow onto the edge arrows: the matching indicator."""
    return tuple(flow[: N.n_edges])
