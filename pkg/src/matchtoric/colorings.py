"""Proper colorings, their monomials, and the relation ``f ~_r g``.

A k-coloring of the replication ``G_a`` of a base graph ``G`` is stored with
its base and multiplicity vector, so that each colour class projects to a
stable set of ``G`` and the coloring has a monomial: the multiset of these
projections.  Edge colorings of a multigraph are vertex colorings of the
replicated line graph (copies in ``(edge index, copy)`` order).

``f ~_r g`` holds when ``g`` is reached from ``f`` by steps each recolouring
the union of at most ``r`` colour classes.  For ``r >= 2`` the search runs on
monomials: permuting colours and permuting copies of a replicated vertex are
themselves 2-class steps, so only the monomial matters.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from . import graphs
from .errors import BudgetExceeded
from .graphs import Multigraph, SimpleGraph

log = logging.getLogger(__name__)

StableSet = Tuple[int, ...]
State = Tuple[StableSet, ...]

DEFAULT_STATE_BUDGET = 10_000_000


class ImproperColoring(ValueError):
    def __init__(self, message: str, edge: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True)
class Coloring:
    """Proper vertex coloring ``colors[v-1] in range(k)`` of ``graph``.

    ``graph`` is ``vertex_replication(base, a)``; both default to the plain
    case ``base = graph``, ``a = (1, ..., 1)``.  For edge colorings
    ``multigraph`` records the multigraph whose edge copies are the vertices.
    """

    graph: SimpleGraph
    k: int
    colors: Tuple[int, ...]
    base: Optional[SimpleGraph] = None
    a: Optional[Tuple[int, ...]] = None
    multigraph: Optional[Multigraph] = None

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.base is None:
            object.__setattr__(self, "base", self.graph)
        if self.a is None:
            object.__setattr__(self, "a", (1,) * self.base.d)
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.colors) != self.graph.d:
            raise ValueError(f"need {self.graph.d} colors, got {len(self.colors)}")
        if self.k < 0 or any(not 0 <= c < self.k for c in self.colors):
            raise ValueError(f"colors must lie in 0..{self.k - 1}")
        if sum(self.a) != self.graph.d:
            raise ValueError("multiplicities do not match the graph size")
        for u, v in self.graph.edges:
            if self.colors[u - 1] == self.colors[v - 1]:
                raise ImproperColoring(f"edge {self._describe(u, v)} is monochromatic", (u, v))

    def _describe(self, u: int, v: int) -> str:
        if self.multigraph is not None:
            copies = self.multigraph.copies
            (e1, c1), (e2, c2) = copies[u - 1], copies[v - 1]
            E = self.multigraph.base.edges
            return f"{E[e1]}#{c1} / {E[e2]}#{c2}"
        return f"{(u, v)}"

    def color_class(self, j: int) -> FrozenSet[int]:
        """``M(f, j)``: the vertices of colour ``j``."""
        return frozenset(v + 1 for v, c in enumerate(self.colors) if c == j)

    def groups(self) -> List[List[int]]:
        return graphs.replication_groups(self.a)

    def owner(self) -> List[int]:
        """Base vertex of each vertex of ``graph`` (index ``v-1``)."""
        out = []
        for p, ap in enumerate(self.a, start=1):
            out.extend([p] * ap)
        return out

    def with_colors(self, colors: Sequence[int]) -> "Coloring":
        return Coloring(self.graph, self.k, tuple(colors), self.base, self.a, self.multigraph)

    def same_space(self, other: "Coloring") -> bool:
        return (
            self.k == other.k
            and self.a == other.a
            and self.base.same_graph(other.base)
            and self.base.edges == other.base.edges
        )

    def to_json(self) -> dict:
        if self.multigraph is not None:
            return {
                "edges": [list(e) for e in self.multigraph.base.edges],
                "multiplicity": list(self.multigraph.multiplicity),
                "colors": list(self.colors),
                "k": self.k,
            }
        out = {"d": self.base.d, "vertex_edges": [list(e) for e in self.base.edges], "colors": list(self.colors), "k": self.k}
        if any(x != 1 for x in self.a):
            out["a"] = list(self.a)
        return out


def vertex_coloring(base: SimpleGraph, colors: Sequence[int], k: Optional[int] = None,
                    a: Optional[Sequence[int]] = None) -> Coloring:
    """Coloring of ``vertex_replication(base, a)`` (``a`` defaults to all ones)."""
    a = tuple(a) if a is not None else (1,) * base.d
    G = graphs.vertex_replication(base, a) if any(x != 1 for x in a) else base
    k = (max(colors) + 1 if colors else 0) if k is None else k
    return Coloring(G, k, tuple(colors), base, a)


def edge_coloring(G: SimpleGraph, colors: Sequence[int], k: Optional[int] = None,
                  multiplicity: Optional[Sequence[int]] = None) -> Coloring:
    """Edge coloring of the multigraph ``(G, multiplicity)``, one colour per copy."""
    mult = tuple(multiplicity) if multiplicity is not None else (1,) * G.n
    H = Multigraph(G, mult)
    L = graphs.line_graph(G)
    target = graphs.vertex_replication(L, mult)
    k = (max(colors) + 1 if colors else 0) if k is None else k
    return Coloring(target, k, tuple(colors), L, mult, H)


def coloring_from_json(data: dict) -> Coloring:
    colors = data["colors"]
    if "multiplicity" in data or ("edges" in data and "vertex_edges" not in data):
        edges = tuple(tuple(e) for e in data["edges"])
        d = max((max(e) for e in edges), default=0)
        d = int(data.get("d", d))
        G = SimpleGraph(d, edges)
        mult = data.get("multiplicity")
        if G.edges != edges:
            raise ValueError("edges must be listed with the smaller endpoint first")
        return edge_coloring(G, colors, data.get("k"), mult)
    base = SimpleGraph(int(data["d"]), tuple(tuple(e) for e in data["vertex_edges"]))
    return vertex_coloring(base, colors, data.get("k"), data.get("a"))


def load_coloring(path: str) -> Coloring:
    with open(path) as fh:
        return coloring_from_json(json.load(fh))


# --------------------------------------------------------------------------
# monomials


def _canon(classes) -> State:
    return tuple(sorted(tuple(sorted(c)) for c in classes))


def monomial_of_coloring(f: Coloring) -> State:
    """Sorted multiset of the ``k`` projected colour classes (the monomial ``x_f``)."""
    own = f.owner()
    classes: List[set] = [set() for _ in range(f.k)]
    for v, c in enumerate(f.colors):
        classes[c].add(own[v])
    return _canon(classes)


def coloring_of_monomial(m: Sequence[Sequence[int]], base: SimpleGraph) -> Coloring:
    """A coloring of ``G_a`` whose monomial is ``m``, with ``a_p`` the number
    of classes containing ``p``.  Copies of ``p`` go to classes in order."""
    state = _canon(m)
    for cls in state:
        for x, y in itertools.combinations(cls, 2):
            if base.has_edge(x, y):
                raise ImproperColoring(f"class {cls} is not stable: edge {(x, y)}", (x, y))
        if len(set(cls)) != len(cls):
            raise ValueError(f"class {cls} repeats a vertex")
        if any(not 1 <= p <= base.d for p in cls):
            raise ValueError(f"class {cls} has a vertex outside the graph")
    a = [0] * base.d
    for cls in state:
        for p in cls:
            a[p - 1] += 1
    groups = graphs.replication_groups(a)
    used = [0] * base.d
    colors = [0] * sum(a)
    for j, cls in enumerate(state):
        for p in cls:
            colors[groups[p - 1][used[p - 1]] - 1] = j
            used[p - 1] += 1
    return vertex_coloring(base, colors, len(state), a)


def differing_classes(f: Coloring, g: Coloring) -> FrozenSet[int]:
    """Colours ``j`` with ``M(f, j) != M(g, j)``."""
    if f.graph.d != g.graph.d or f.k != g.k or not f.graph.same_graph(g.graph):
        raise ValueError("colorings live on different graphs or palettes")
    out = set()
    for x, y in zip(f.colors, g.colors):
        if x != y:
            out.add(x)
            out.add(y)
    return frozenset(out)


# --------------------------------------------------------------------------
# labelled neighbours and Kempe switches


def _proper_recolorings(G: SimpleGraph, colors: List[int], vertices: List[int], palette: List[int]):
    """All ways to recolour ``vertices`` from ``palette`` keeping ``colors`` proper."""
    adj = G.adjacency
    order = sorted(vertices, key=lambda v: -len(adj[v]))
    cur = list(colors)
    for v in order:
        cur[v - 1] = -1

    def rec(i: int):
        if i == len(order):
            yield tuple(cur)
            return
        v = order[i]
        for c in palette:
            if all(cur[w - 1] != c for w in adj[v]):
                cur[v - 1] = c
                yield from rec(i + 1)
        cur[v - 1] = -1

    yield from rec(0)


def neighbors_r(f: Coloring, r: int) -> Iterator[Coloring]:
    """Every proper coloring differing from ``f`` in between 1 and ``r`` classes."""
    if r < 1:
        raise ValueError("r must be positive")
    seen = {f.colors}
    for size in range(2, min(r, f.k) + 1):
        for S in itertools.combinations(range(f.k), size):
            verts = [v + 1 for v, c in enumerate(f.colors) if c in S]
            for cols in _proper_recolorings(f.graph, list(f.colors), verts, list(S)):
                if cols not in seen:
                    seen.add(cols)
                    yield f.with_colors(cols)


def kempe_switch(f: Coloring, i: int, j: int, seed: int) -> Coloring:
    """Swap colours ``i`` and ``j`` on the ``{i, j}``-component containing ``seed``."""
    if i == j:
        return f
    if f.colors[seed - 1] not in (i, j):
        raise ValueError(f"vertex {seed} has neither colour {i} nor {j}")
    comp = {seed}
    stack = [seed]
    adj = f.graph.adjacency
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in comp and f.colors[w - 1] in (i, j):
                comp.add(w)
                stack.append(w)
    cols = list(f.colors)
    for v in comp:
        cols[v - 1] = j if cols[v - 1] == i else i
    return f.with_colors(cols)


def chromatic_number(G: SimpleGraph) -> int:
    """Exact chromatic number by backtracking on colours in degree order."""
    if G.d == 0:
        return 0
    adj = G.adjacency
    order = sorted(G.vertices, key=lambda v: (-len(adj[v]), v))
    cols: Dict[int, int] = {}

    def colorable(i: int, k: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {cols[w] for w in adj[v] if w in cols}
        # A fresh colour beyond ``used`` is symmetric, so try only one.
        for c in range(min(used + 1, k)):
            if c not in taken:
                cols[v] = c
                if colorable(i + 1, k, max(used, c + 1)):
                    return True
                del cols[v]
        return False

    lower = 2 if G.n else 1
    for k in range(lower, G.d + 1):
        cols.clear()
        if colorable(0, k, 0):
            return k
    return G.d


# --------------------------------------------------------------------------
# the decision procedure


@dataclass
class EquivalenceCertificate:
    """Colorings ``f_0 = f, ..., f_s = g`` with the classes changed at each step."""

    colorings: List[Coloring]
    changed: List[FrozenSet[int]] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.changed)

    def verify(self, r: int) -> bool:
        """Replay: every coloring proper (checked on construction), each step
        changes exactly the listed classes, and no more than ``r`` of them."""
        if len(self.colorings) != len(self.changed) + 1:
            return False
        for (p, q), S in zip(zip(self.colorings, self.colorings[1:]), self.changed):
            if differing_classes(p, q) != S or not 1 <= len(S) <= r:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "colorings": [list(c.colors) for c in self.colorings],
            "changed": [sorted(S) for S in self.changed],
        }


@dataclass
class EquivalenceResult:
    equivalent: bool
    r: int
    certificate: Optional[EquivalenceCertificate] = None
    states_visited: int = 0

    def to_json(self) -> dict:
        out = {"equivalent": self.equivalent, "r": self.r, "states_visited": self.states_visited}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _stable_subsets(base: SimpleGraph, support: Sequence[int]) -> List[StableSet]:
    """Stable sets of ``base`` inside ``support``, sorted (empty set first)."""
    out: List[StableSet] = []
    verts = sorted(support)

    def rec(i: int, chosen: List[int]):
        if i == len(verts):
            out.append(tuple(chosen))
            return
        rec(i + 1, chosen)
        v = verts[i]
        if all(not base.has_edge(v, w) for w in chosen):
            chosen.append(v)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return sorted(out)


class _Repartitioner:
    """Enumerates multisets of ``m`` stable sets with prescribed vertex counts."""

    def __init__(self, base: SimpleGraph):
        self.base = base
        self.cache: Dict[Tuple, List[State]] = {}

    def __call__(self, counts: Tuple[Tuple[int, int], ...], m: int) -> List[State]:
        key = (counts, m)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        cnt = dict(counts)
        cands = _stable_subsets(self.base, list(cnt))
        out: List[State] = []
        chosen: List[StableSet] = []

        def rec(start: int, left: int):
            if left == 0:
                if not any(cnt.values()):
                    out.append(tuple(chosen))
                return
            if any(c > left for c in cnt.values()):
                return
            for idx in range(start, len(cands)):
                s = cands[idx]
                if all(cnt[p] > 0 for p in s):
                    for p in s:
                        cnt[p] -= 1
                    chosen.append(s)
                    rec(idx, left - 1)
                    chosen.pop()
                    for p in s:
                        cnt[p] += 1

        rec(0, m)
        out.sort()
        self.cache[key] = out
        return out


def _submultisets(state: State, size: int):
    """Distinct sub-multisets of ``state`` of the given size, as index tuples."""
    seen = set()
    for idx in itertools.combinations(range(len(state)), size):
        key = tuple(state[i] for i in idx)
        if key not in seen:
            seen.add(key)
            yield idx, key


def _state_neighbors(state: State, r: int, rep: _Repartitioner):
    """``(neighbour, removed, added)`` triples, neighbours in ascending order."""
    found: Dict[State, Tuple[State, State]] = {}
    for size in range(2, min(r, len(state)) + 1):
        for idx, removed in _submultisets(state, size):
            cnt: Dict[int, int] = {}
            for cls in removed:
                for p in cls:
                    cnt[p] = cnt.get(p, 0) + 1
            rest = [state[i] for i in range(len(state)) if i not in idx]
            for added in rep(tuple(sorted(cnt.items())), size):
                if added == removed:
                    continue
                nb = _canon(rest + list(added))
                if nb not in found:
                    found[nb] = (removed, added)
    for nb in sorted(found):
        yield nb, found[nb][0], found[nb][1]


def _apply_step(f: Coloring, removed: State, added: State) -> Coloring:
    """Realise a monomial step on an actual coloring.

    Picks colours whose projected classes are ``removed`` (lowest colours
    first) and hands the copies of each base vertex in them to the new
    classes in order.
    """
    own = f.owner()
    proj: Dict[int, Tuple[int, ...]] = {}
    members: Dict[int, List[int]] = {j: [] for j in range(f.k)}
    for v, c in enumerate(f.colors, start=1):
        members[c].append(v)
    for j in range(f.k):
        proj[j] = tuple(sorted(own[v - 1] for v in members[j]))
    pool = list(range(f.k))
    chosen = []
    for cls in removed:
        j = next(j for j in pool if proj[j] == cls)
        pool.remove(j)
        chosen.append(j)
    chosen.sort()
    copies: Dict[int, List[int]] = {}
    for j in chosen:
        for v in members[j]:
            copies.setdefault(own[v - 1], []).append(v)
    for p in copies:
        copies[p].sort()
    cols = list(f.colors)
    for j, cls in zip(chosen, added):
        for p in cls:
            cols[copies[p].pop(0) - 1] = j
    return f.with_colors(cols)


def _finish_exactly(h: Coloring, g: Coloring) -> Tuple[List[Coloring], List[FrozenSet[int]]]:
    """Steps of size 2 turning ``h`` into ``g`` when both have the same monomial.

    First copies of a replicated vertex are swapped between classes so each
    colour of ``h`` matches a colour of ``g`` as a vertex set, then colours
    are transposed.
    """
    own = h.owner()
    steps: List[Coloring] = []
    changed: List[FrozenSet[int]] = []

    def push(cols):
        nonlocal h
        nxt = h.with_colors(cols)
        S = differing_classes(h, nxt)
        if S:
            steps.append(nxt)
            changed.append(S)
            h = nxt

    def projections(c: Coloring):
        out: Dict[int, List[int]] = {j: [] for j in range(c.k)}
        for v, col in enumerate(c.colors, start=1):
            out[col].append(own[v - 1])
        return {j: tuple(sorted(x)) for j, x in out.items()}

    ph, pg = projections(h), projections(g)
    # sigma: colour of h -> colour of g with the same projection.
    sigma: Dict[int, int] = {}
    free = list(range(g.k))
    for j in range(h.k):
        t = next(t for t in free if pg[t] == ph[j])
        free.remove(t)
        sigma[j] = t
    inv = {t: j for j, t in sigma.items()}
    # Target with h's colour names and g's vertex sets.
    target = [inv[c] for c in g.colors]
    for grp in h.groups():
        for v in grp:
            want = target[v - 1]
            if h.colors[v - 1] == want:
                continue
            w = next(w for w in grp if h.colors[w - 1] == want)
            cols = list(h.colors)
            cols[v - 1], cols[w - 1] = cols[w - 1], cols[v - 1]
            push(cols)
    # Now h equals g up to renaming colour j -> sigma[j]; transpose colours.
    perm = dict(sigma)
    for j in range(h.k):
        while perm[j] != j:
            t = perm[j]
            cols = [t if c == j else j if c == t else c for c in h.colors]
            push(cols)
            perm[j], perm[t] = perm[t], perm[j]
    return steps, changed


def decide_equiv_r(
    f: Coloring,
    g: Coloring,
    r: int,
    max_states: Optional[int] = DEFAULT_STATE_BUDGET,
) -> EquivalenceResult:
    """Decide ``f ~_r g``; on success return a replayable certificate.

    Breadth-first search over monomials, neighbours visited in ascending
    order.  Raises ``ValueError`` when ``f`` and ``g`` lie in different
    fibers (other graph, palette or multiplicities) and ``BudgetExceeded``
    when more than ``max_states`` monomials are visited.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if not f.same_space(g) or not f.graph.same_graph(g.graph):
        raise ValueError("different fibers: the colorings live on different graphs or palettes")
    if f.colors == g.colors:
        return EquivalenceResult(True, r, EquivalenceCertificate([f], []), 1)
    if r == 1:
        # One class cannot change while all the others stay put.
        return EquivalenceResult(False, r, None, 1)
    start, goal = monomial_of_coloring(f), monomial_of_coloring(g)
    parent: Dict[State, Optional[Tuple[State, State, State]]] = {start: None}
    queue = deque([start])
    rep = _Repartitioner(f.base)
    found = start == goal
    while queue and not found:
        s = queue.popleft()
        for nb, removed, added in _state_neighbors(s, r, rep):
            if nb in parent:
                continue
            parent[nb] = (s, removed, added)
            if nb == goal:
                found = True
                break
            if max_states is not None and len(parent) > max_states:
                raise BudgetExceeded(
                    f"state budget of {max_states} exceeded",
                    {"states_visited": len(parent), "r": r},
                )
            queue.append(nb)
    if not found:
        return EquivalenceResult(False, r, None, len(parent))
    path = []
    s = goal
    while parent[s] is not None:
        prev, removed, added = parent[s]
        path.append((removed, added))
        s = prev
    path.reverse()
    cols = [f]
    changed: List[FrozenSet[int]] = []
    cur = f
    for removed, added in path:
        nxt = _apply_step(cur, removed, added)
        S = differing_classes(cur, nxt)
        if S:
            cols.append(nxt)
            changed.append(S)
            cur = nxt
    tail, tail_changed = _finish_exactly(cur, g)
    cols += tail
    changed += tail_changed
    return EquivalenceResult(True, r, EquivalenceCertificate(cols, changed), len(parent))


def equivalence_classes(colorings: Sequence[Coloring], r: int) -> List[List[int]]:
    """Partition indices of colorings of one graph into ``~_r`` classes."""
    classes: List[List[int]] = []
    for i, c in enumerate(colorings):
        for cls in classes:
            if decide_equiv_r(colorings[cls[0]], c, r).equivalent:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


# --------------------------------------------------------------------------
# enumeration and fixed examples


def proper_edge_colorings(G: SimpleGraph, k: int, multiplicity: Optional[Sequence[int]] = None,
                          limit: Optional[int] = None) -> List[Coloring]:
    """All proper ``k``-edge-colorings of ``(G, multiplicity)`` as labelled colorings."""
    mult = tuple(multiplicity) if multiplicity is not None else (1,) * G.n
    L = graphs.vertex_replication(graphs.line_graph(G), mult)
    out: List[Coloring] = []
    for cols in _proper_recolorings(L, [0] * L.d, list(L.vertices), list(range(k))):
        out.append(edge_coloring(G, cols, k, mult))
        if limit is not None and len(out) >= limit:
            break
    return out


def sample_edge_coloring_pairs(G: SimpleGraph, k: int, count: int, seed: int = 0,
                               multiplicity: Optional[Sequence[int]] = None):
    pool = proper_edge_colorings(G, k, multiplicity)
    rng = random.Random(seed)
    return [tuple(rng.sample(pool, 2)) if len(pool) > 1 else (pool[0], pool[0]) for _ in range(count)]


R, Y, B, GR = 0, 1, 2, 3
COLOR_NAMES = ("R", "Y", "B", "G")


def example_pair(name: str) -> Tuple[Coloring, Coloring]:
    """The fixed 4-edge-coloring pairs on ``G1``, ``G2`` and ``G3`` with
    its middle rung doubled.  Colours are R, Y, B, G = 0..3."""
    if name == "G1":
        G = graphs.paper_graph("G1")
        f = (R, Y, B, GR, B, GR, Y, R)
        g = (R, Y, B, GR, Y, B, R, GR)
        return edge_coloring(G, f, 4), edge_coloring(G, g, 4)
    if name == "G2":
        G = graphs.paper_graph("G2")
        f = (Y, B, R, GR, B, Y, GR, Y, R)
        g = (GR, Y, R, Y, B, B, GR, R, Y)
        return edge_coloring(G, f, 4), edge_coloring(G, g, 4)
    if name == "G3":
        G = graphs.paper_graph("G3")
        mult = (1,) * 9 + (2,)
        f = (Y, GR, R, GR, B, Y, B, R, R, Y, GR)
        g = (R, GR, Y, B, GR, B, R, R, GR, Y, B)
        return edge_coloring(G, f, 4, mult), edge_coloring(G, g, 4, mult)
    raise ValueError(f"no fixed pair for {name!r}")
