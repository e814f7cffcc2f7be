"""Simple graphs, multigraphs, and the constructions used throughout.

Vertices are labelled ``1..d``.  Edges are identified by their position in
``SimpleGraph.edges`` (0-based in code), because multiplicity vectors and
indicator coordinates are positional.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

Edge = Tuple[int, int]

MATCHINGS = "matchings"
PERFECT_MATCHINGS = "perfect_matchings"
STABLE_SETS = "stable_sets"


@dataclass(frozen=True)
class SimpleGraph:
    d: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        seen = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.d and 1 <= j <= self.d):
                raise ValueError(f"edge {e} has an endpoint outside 1..{self.d}")
            pair = (i, j) if i < j else (j, i)
            if pair in seen:
                raise ValueError(f"duplicate edge {pair}")
            seen.add(pair)
            norm.append(pair)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.d + 1)

    @cached_property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        adj: Dict[int, set] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {e: k for k, e in enumerate(self.edges)}

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency.get(i, ())

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def bipartition(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Two colour classes (smallest vertex of each component on the left), or None."""
        side: Dict[int, int] = {}
        for s in self.vertices:
            if s in side:
                continue
            side[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adjacency[v]:
                    if w not in side:
                        side[w] = 1 - side[v]
                        stack.append(w)
                    elif side[w] == side[v]:
                        return None
        left = tuple(v for v in self.vertices if side[v] == 0)
        right = tuple(v for v in self.vertices if side[v] == 1)
        return left, right

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def edge_subgraph(self, indices: Iterable[int], relabel: bool = True) -> "SimpleGraph":
        """Subgraph on the given edge indices, keeping their relative order.

        With ``relabel`` the touched vertices are renumbered 1.. in increasing
        order and untouched vertices are dropped.
        """
        chosen = [self.edges[k] for k in sorted(indices)]
        if not relabel:
            return SimpleGraph(self.d, tuple(chosen))
        verts = sorted({v for e in chosen for v in e})
        ren = {v: i + 1 for i, v in enumerate(verts)}
        return SimpleGraph(len(verts), tuple((ren[a], ren[b]) for a, b in chosen))

    def delete_vertices(self, removed: Iterable[int]) -> "SimpleGraph":
        removed = set(removed)
        keep = [v for v in self.vertices if v not in removed]
        ren = {v: i + 1 for i, v in enumerate(keep)}
        return SimpleGraph(
            len(keep),
            tuple((ren[a], ren[b]) for a, b in self.edges if a in ren and b in ren),
        )

    def relabel(self, perm: Dict[int, int]) -> "SimpleGraph":
        return SimpleGraph(self.d, tuple((perm[a], perm[b]) for a, b in self.edges))

    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    def same_graph(self, other: "SimpleGraph") -> bool:
        """Equal as labelled graphs, ignoring edge order."""
        return self.d == other.d and self.edge_set() == other.edge_set()

    def __str__(self) -> str:
        body = ",".join(f"{a}-{b}" for a, b in self.edges)
        return f"Graph(d={self.d}; {body})"


@dataclass(frozen=True)
class Multigraph:
    base: SimpleGraph
    multiplicity: Tuple[int, ...]

    def __post_init__(self):
        mult = tuple(int(a) for a in self.multiplicity)
        if len(mult) != self.base.n:
            raise ValueError(f"need {self.base.n} multiplicities, got {len(mult)}")
        if any(a < 0 for a in mult):
            raise ValueError("multiplicities must be non-negative")
        object.__setattr__(self, "multiplicity", mult)

    @property
    def copies(self) -> List[Tuple[int, int]]:
        """Expanded edge copies as ``(edge index, copy number)`` in expansion order."""
        return [(k, c) for k, a in enumerate(self.multiplicity) for c in range(a)]

    def copy_endpoints(self) -> List[Edge]:
        return [self.base.edges[k] for k, _ in self.copies]

    def line_graph(self) -> SimpleGraph:
        """Line graph of the multigraph: one vertex per edge copy.

        Parallel copies share both endpoints and are therefore adjacent.
        """
        ends = self.copy_endpoints()
        out = []
        for p in range(len(ends)):
            for q in range(p + 1, len(ends)):
                if set(ends[p]) & set(ends[q]):
                    out.append((p + 1, q + 1))
        return SimpleGraph(len(ends), tuple(out))

    def degree(self, v: int) -> int:
        return sum(a for e, a in zip(self.base.edges, self.multiplicity) if v in e)


# --------------------------------------------------------------------------
# constructions


def line_graph(G: SimpleGraph) -> SimpleGraph:
    """Vertex ``k+1`` of the result is edge ``k`` of ``G``."""
    out = []
    for p in range(G.n):
        a, b = G.edges[p]
        for q in range(p + 1, G.n):
            c, e = G.edges[q]
            if a == c or a == e or b == c or b == e:
                out.append((p + 1, q + 1))
    return SimpleGraph(G.n, tuple(out))


def replication_groups(a: Sequence[int]) -> List[List[int]]:
    """Vertices of ``G_a`` belonging to each base vertex, in base order."""
    groups = []
    nxt = 1
    for ai in a:
        groups.append(list(range(nxt, nxt + ai)))
        nxt += ai
    return groups


def vertex_replication(G: SimpleGraph, a: Sequence[int]) -> SimpleGraph:
    """Blow vertex ``i`` up into a clique of size ``a[i-1]``, joined along edges of ``G``.

    Vertices of the result are numbered group by group (group of vertex 1
    first); ``a_i = 0`` deletes vertex ``i``.
    """
    if len(a) != G.d:
        raise ValueError(f"need {G.d} multiplicities, got {len(a)}")
    if any(x < 0 for x in a):
        raise ValueError("multiplicities must be non-negative")
    groups = replication_groups(a)
    out = []
    for grp in groups:
        out.extend(itertools.combinations(grp, 2))
    for i, j in G.edges:
        for x in groups[i - 1]:
            for y in groups[j - 1]:
                out.append((x, y))
    out.sort()
    return SimpleGraph(sum(a), tuple(out))


def edge_replication(G: SimpleGraph, a: Sequence[int]) -> Multigraph:
    return Multigraph(G, tuple(a))


def odd_subdivision(G: SimpleGraph, lengths: Sequence[int]) -> SimpleGraph:
    """Replace edge ``k`` by a path with ``lengths[k]`` edges through new vertices.

    New vertices are numbered from ``d+1`` in edge order; path edges keep
    the order of the edge they replace, walking from the smaller endpoint.
    """
    if len(lengths) != G.n:
        raise ValueError(f"need {G.n} lengths, got {len(lengths)}")
    for L in lengths:
        if L < 1 or L % 2 == 0:
            raise ValueError(f"path lengths must be odd and positive, got {L}")
    nxt = G.d + 1
    out = []
    for (u, v), L in zip(G.edges, lengths):
        path = [u] + list(range(nxt, nxt + L - 1)) + [v]
        nxt += L - 1
        out.extend(zip(path, path[1:]))
    return SimpleGraph(nxt - 1, tuple(out))


def double_with_perfect_matching(G: SimpleGraph) -> SimpleGraph:
    """Two disjoint copies of ``G`` plus the edges ``{i, i+d}``."""
    d = G.d
    out = list(G.edges)
    out += [(a + d, b + d) for a, b in G.edges]
    out += [(i, i + d) for i in G.vertices]
    return SimpleGraph(2 * d, tuple(out))


# --------------------------------------------------------------------------
# enumeration


def _matchings(G: SimpleGraph, perfect: bool) -> List[FrozenSet[int]]:
    out = []
    n = G.n

    def rec(k: int, used: int, chosen: List[int]):
        if k == n:
            if not perfect or bin(used).count("1") == G.d:
                out.append(frozenset(chosen))
            return
        rec(k + 1, used, chosen)
        a, b = G.edges[k]
        bits = (1 << a) | (1 << b)
        if not used & bits:
            chosen.append(k)
            rec(k + 1, used | bits, chosen)
            chosen.pop()

    if perfect and G.d % 2:
        return []
    rec(0, 0, [])
    return out


def _stable_sets(G: SimpleGraph) -> List[FrozenSet[int]]:
    out = []
    verts = list(G.vertices)

    def rec(k: int, chosen: List[int], blocked: set):
        if k == len(verts):
            out.append(frozenset(chosen))
            return
        rec(k + 1, chosen, blocked)
        v = verts[k]
        if v not in blocked:
            chosen.append(v)
            rec(k + 1, chosen, blocked | G.adjacency[v])
            chosen.pop()

    rec(0, [], set())
    return out


def indicator(subset: Iterable[int], size: int, offset: int = 0) -> Tuple[int, ...]:
    vec = [0] * size
    for x in subset:
        vec[x - offset] = 1
    return tuple(vec)


def enumerate_subsets(G: SimpleGraph, kind: str) -> List[FrozenSet[int]]:
    """All matchings / perfect matchings (sets of 0-based edge indices) or
    stable sets (sets of 1-based vertices), sorted by indicator vector."""
    if kind == MATCHINGS:
        found = _matchings(G, perfect=False)
        key = lambda s: indicator(s, G.n)
    elif kind == PERFECT_MATCHINGS:
        found = _matchings(G, perfect=True)
        key = lambda s: indicator(s, G.n)
    elif kind == STABLE_SETS:
        found = _stable_sets(G)
        key = lambda s: indicator(s, G.d, offset=1)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return sorted(found, key=key)


# --------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: Tuple[Tuple[int, ...], ...]  # edge indices of the parent, per block
    cut_vertices: FrozenSet[int]

    def subgraphs(self, G: SimpleGraph) -> List[SimpleGraph]:
        return [G.edge_subgraph(b) for b in self.blocks]


def blocks(G: SimpleGraph) -> BlockDecomposition:
    """Biconnected components as edge-index sets, sorted by smallest edge."""
    g = G.to_networkx()
    comps = []
    for comp in nx.biconnected_component_edges(g):
        idx = sorted(G.edge_index[(min(a, b), max(a, b))] for a, b in comp)
        comps.append(tuple(idx))
    comps.sort()
    cuts = frozenset(nx.articulation_points(g))
    return BlockDecomposition(tuple(comps), cuts)


# --------------------------------------------------------------------------
# subgraph search and canonical forms


def subgraph_contains(host: SimpleGraph, pattern: SimpleGraph) -> bool:
    """True iff ``pattern`` embeds injectively into ``host`` (not necessarily induced)."""
    return find_embedding(host, pattern) is not None


def find_embedding(host: SimpleGraph, pattern: SimpleGraph) -> Optional[Dict[int, int]]:
    if pattern.d > host.d or pattern.n > host.n:
        return None
    active = [v for v in pattern.vertices if pattern.degree(v) > 0]
    isolated = [v for v in pattern.vertices if pattern.degree(v) == 0]
    # Place high-degree vertices first, then grow along edges.
    order: List[int] = []
    remaining = set(active)
    while remaining:
        placed = set(order)
        best = max(
            remaining,
            key=lambda v: (len(pattern.adjacency[v] & placed), pattern.degree(v), -v),
        )
        order.append(best)
        remaining.discard(best)
    hdeg = {v: host.degree(v) for v in host.vertices}
    mapping: Dict[int, int] = {}
    used = set()

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        need = pattern.degree(v)
        mapped_nbrs = [mapping[w] for w in pattern.adjacency[v] if w in mapping]
        if mapped_nbrs:
            cands = set(host.adjacency[mapped_nbrs[0]])
            for w in mapped_nbrs[1:]:
                cands &= host.adjacency[w]
        else:
            cands = set(host.vertices)
        for h in sorted(cands):
            if h in used or hdeg[h] < need:
                continue
            mapping[v] = h
            used.add(h)
            if rec(pos + 1):
                return True
            del mapping[v]
            used.discard(h)
        return False

    if not rec(0):
        return None
    free = [h for h in host.vertices if h not in used]
    if len(free) < len(isolated):
        return None
    for v, h in zip(isolated, free):
        mapping[v] = h
    return mapping


def _refined_colors(G: SimpleGraph) -> Dict[int, int]:
    colors = {v: G.degree(v) for v in G.vertices}
    while True:
        sig = {v: (colors[v], tuple(sorted(colors[w] for w in G.adjacency[v]))) for v in G.vertices}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in G.vertices}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


CANONICAL_LIMIT = 8


def canonical_form(G: SimpleGraph) -> Tuple[int, int]:
    """``(d, code)``: minimum upper-triangle adjacency code over all labellings
    compatible with colour refinement.  Intended for ``d <= 8``."""
    d = G.d
    if d > CANONICAL_LIMIT:
        raise ValueError(f"canonical form is limited to {CANONICAL_LIMIT} vertices")
    colors = _refined_colors(G)
    cells: Dict[int, List[int]] = {}
    for v in G.vertices:
        cells.setdefault(colors[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    bitpos = {}
    k = 0
    for j in range(1, d + 1):
        for i in range(1, j):
            bitpos[(i, j)] = k
            k += 1
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in cell_list)):
        label = {}
        pos = 1
        for p in perms:
            for v in p:
                label[v] = pos
                pos += 1
        code = 0
        for a, b in G.edges:
            x, y = label[a], label[b]
            if x > y:
                x, y = y, x
            code |= 1 << bitpos[(x, y)]
        if best is None or code < best:
            best = code
    return d, best or 0


def from_canonical(form: Tuple[int, int]) -> SimpleGraph:
    d, code = form
    out = []
    k = 0
    for j in range(1, d + 1):
        for i in range(1, j):
            if code >> k & 1:
                out.append((i, j))
            k += 1
    return SimpleGraph(d, tuple(sorted(out)))


def is_isomorphic(G: SimpleGraph, H: SimpleGraph) -> bool:
    if G.d != H.d or G.n != H.n:
        return False
    if G.d <= CANONICAL_LIMIT:
        return canonical_form(G) == canonical_form(H)
    return nx.is_isomorphic(G.to_networkx(), H.to_networkx())


def all_graphs(d: int) -> List[SimpleGraph]:
    """One representative per isomorphism class of graphs on ``d`` vertices.

    Grows graphs one edge at a time and keeps canonical forms, so every class
    is reached from a class with one edge fewer.  Sorted by (edges, code).
    """
    if d > CANONICAL_LIMIT:
        raise ValueError(f"enumeration is limited to {CANONICAL_LIMIT} vertices")
    pairs = list(itertools.combinations(range(1, d + 1), 2))
    level = {canonical_form(SimpleGraph(d))}
    seen = set(level)
    while level:
        nxt = set()
        for form in level:
            G = from_canonical(form)
            es = G.edge_set()
            for p in pairs:
                if p in es:
                    continue
                f = canonical_form(SimpleGraph(d, G.edges + (p,)))
                if f not in seen:
                    seen.add(f)
                    nxt.add(f)
        level = nxt
    forms = sorted(seen, key=lambda f: (bin(f[1]).count("1"), f[1]))
    return [from_canonical(f) for f in forms]


# --------------------------------------------------------------------------
# named graphs

_G1_EDGES = ((1, 2), (2, 4), (3, 4), (1, 3), (1, 5), (2, 5), (3, 5), (4, 5))
_G2_EDGES = ((1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 6), (3, 5), (4, 5), (5, 6))
# G3 splits vertex 5 of G2 into 5 (left) and 6 (right) joined by the middle
# rung; G2's vertex 6 becomes 7.
_G3_EDGES = ((1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 7), (3, 6), (4, 5), (6, 7), (5, 6))
_HEX = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6))
_G4_EDGES = _HEX + ((2, 7), (5, 7), (3, 7), (6, 7))
_G5_EDGES = _HEX + ((2, 6), (3, 5), (1, 7), (4, 7))
_G6_EDGES = _HEX + ((2, 5), (3, 6), (1, 7), (4, 7))
# G7: spoke 1-5 of G1 becomes 1-7-6-5.  G8: rim edge 1-2 becomes 1-6-7-2.
_G7_EDGES = ((1, 2), (2, 4), (3, 4), (1, 3), (1, 7), (6, 7), (5, 6), (2, 5), (3, 5), (4, 5))
_G8_EDGES = ((1, 6), (6, 7), (2, 7), (2, 4), (3, 4), (1, 3), (1, 5), (2, 5), (3, 5), (4, 5))

_EXAMPLE_GRAPHS = {
    "G1": (5, _G1_EDGES),
    "G2": (6, _G2_EDGES),
    "G3": (7, _G3_EDGES),
    "G4": (7, _G4_EDGES),
    "G5": (7, _G5_EDGES),
    "G6": (7, _G6_EDGES),
    "G7": (7, _G7_EDGES),
    "G8": (7, _G8_EDGES),
}

EXAMPLE_NAMES = tuple(_EXAMPLE_GRAPHS)


def complete_graph(d: int) -> SimpleGraph:
    return SimpleGraph(d, tuple(itertools.combinations(range(1, d + 1), 2)))


def complete_bipartite(m: int, n: int) -> SimpleGraph:
    return SimpleGraph(m + n, tuple((i, m + j) for i in range(1, m + 1) for j in range(1, n + 1)))


def complete_tripartite_11n(n: int) -> SimpleGraph:
    """K_{1,1,n}: apexes 1 and 2 joined, both adjacent to 3..n+2."""
    out = [(1, 2)] + [(1, j) for j in range(3, n + 3)] + [(2, j) for j in range(3, n + 3)]
    return SimpleGraph(n + 2, tuple(out))


def cycle(d: int) -> SimpleGraph:
    if d < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph(d, tuple((i, i + 1) for i in range(1, d)) + ((1, d),))


def path(d: int) -> SimpleGraph:
    """Path on ``d`` vertices."""
    return SimpleGraph(d, tuple((i, i + 1) for i in range(1, d)))


def wheel(d: int) -> SimpleGraph:
    """W_d: rim cycle on 1..d-1, hub d."""
    if d < 4:
        raise ValueError("wheels need d >= 4")
    rim = tuple((i, i + 1) for i in range(1, d - 1)) + ((1, d - 1),)
    return SimpleGraph(d, rim + tuple((i, d) for i in range(1, d)))


_NAME_PATTERNS = [
    (re.compile(r"^W_?\{?(\d+)\}?$"), lambda m: wheel(int(m[1]))),
    (re.compile(r"^C_?\{?(\d+)\}?$"), lambda m: cycle(int(m[1]))),
    (re.compile(r"^P_?\{?(\d+)\}?$"), lambda m: path(int(m[1]))),
    (re.compile(r"^K_?\{?1,1,(\d+)\}?$"), lambda m: complete_tripartite_11n(int(m[1]))),
    (re.compile(r"^K11(\d)$"), lambda m: complete_tripartite_11n(int(m[1]))),
    (re.compile(r"^K_?\{?(\d+),(\d+)\}?$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^K(\d)(\d)$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^K_\{?(\d+)\}?$"), lambda m: complete_graph(int(m[1]))),
    (re.compile(r"^K(\d)$"), lambda m: complete_graph(int(m[1]))),
]


def paper_graph(name: str) -> SimpleGraph:
    """Named graphs: ``G1``..``G8`` as drawn in the examples, plus families.

    Families: ``W6``/``W_6`` wheels, ``K5``/``K_{10}`` complete graphs,
    ``K23``/``K2,3``/``K_{2,3}`` complete bipartite graphs, ``K112``/``K_{1,1,n}``,
    ``C6`` cycles and ``P5`` paths (``P_d`` has ``d`` vertices).  Two bare
    digits after ``K`` always mean a bipartite graph; write ``K_10`` for K_10.
    """
    key = name.strip()
    if key in _EXAMPLE_GRAPHS:
        d, edges = _EXAMPLE_GRAPHS[key]
        return SimpleGraph(d, edges)
    for pat, build in _NAME_PATTERNS:
        m = pat.match(key)
        if m:
            return build(m)
    raise ValueError(f"unknown graph name {name!r}")


# --------------------------------------------------------------------------
# I/O


def from_graph6(text: str) -> SimpleGraph:
    """Parse one graph6 string; vertex ``v`` of the file becomes ``v+1``."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        g = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, UnicodeEncodeError, ValueError) as exc:
        raise ValueError(f"invalid graph6 string {text.strip()!r}: {exc}") from None
    edges = sorted((min(a, b) + 1, max(a, b) + 1) for a, b in g.edges())
    return SimpleGraph(g.number_of_nodes(), tuple(edges))


def to_graph6(G: SimpleGraph) -> str:
    g = nx.Graph()
    g.add_nodes_from(range(G.d))
    g.add_edges_from((a - 1, b - 1) for a, b in G.edges)
    return nx.to_graph6_bytes(g, header=False).decode("ascii").strip()


def to_dot(G: SimpleGraph, name: str = "G", edge_labels: Optional[Sequence[str]] = None) -> str:
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        lines.append(f"  {v};")
    for k, (a, b) in enumerate(G.edges):
        label = f' [label="{edge_labels[k]}"]' if edge_labels else ""
        lines.append(f"  {a} -- {b}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"
