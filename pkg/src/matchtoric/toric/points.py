"""Lattice points of matching, perfect matching and stable set polytopes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .. import graphs
from ..graphs import SimpleGraph

MATCHING = "matching"
PERFECT_MATCHING = "perfect_matching"
STABLE_SET = "stable_set"
KINDS = (MATCHING, PERFECT_MATCHING, STABLE_SET)

_ENUM_KIND = {
    MATCHING: graphs.MATCHINGS,
    PERFECT_MATCHING: graphs.PERFECT_MATCHINGS,
    STABLE_SET: graphs.STABLE_SETS,
}


def normalize_kind(kind: str) -> str:
    k = kind.strip().lower().replace("-", "_")
    aliases = {"matchings": MATCHING, "perfect_matchings": PERFECT_MATCHING,
               "stable_sets": STABLE_SET, "pm": PERFECT_MATCHING}
    k = aliases.get(k, k)
    if k not in KINDS:
        raise ValueError(f"unknown polytope kind {kind!r}")
    return k


@dataclass(frozen=True)
class PointConfiguration:
    """Ordered lattice points ``a_1..a_n`` of a polytope in ``Z^dim``.

    Each point is implicitly homogenised with a trailing 1, so the variable
    ``x_i`` maps to ``t^{a_i} s``.
    """

    dim: int
    points: Tuple[Tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise ValueError(f"point {p} is not in Z^{self.dim}")
            if min(p, default=0) < 0:
                raise ValueError(f"point {p} has a negative coordinate")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def homogenized(self, i: int) -> Tuple[int, ...]:
        return self.points[i] + (1,)

    def matrix(self) -> List[List[int]]:
        """The (dim+1) x n homogenised point matrix."""
        rows = [[p[c] for p in self.points] for c in range(self.dim)]
        rows.append([1] * self.n)
        return rows

    def image(self, exps: Sequence[int]) -> Tuple[int, ...]:
        """Homogenised multidegree ``sum_i exps_i (a_i, 1)``."""
        out = [0] * (self.dim + 1)
        for i, e in enumerate(exps):
            if e:
                p = self.points[i]
                for c in range(self.dim):
                    out[c] += e * p[c]
                out[self.dim] += e
        return tuple(out)

    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}


def lattice_points(G: SimpleGraph, kind: str) -> PointConfiguration:
    """Indicator vectors of matchings, perfect matchings or stable sets of ``G``.

    Points come in ascending lexicographic order, so the zero vector (the
    empty matching / stable set) is first whenever it is present.
    """
    kind = normalize_kind(kind)
    subsets = graphs.enumerate_subsets(G, _ENUM_KIND[kind])
    if kind == STABLE_SET:
        dim = G.d
        pts = [graphs.indicator(s, G.d, offset=1) for s in subsets]
    else:
        dim = G.n
        pts = [graphs.indicator(s, G.n) for s in subsets]
    return PointConfiguration(dim, tuple(sorted(pts)), label=f"{kind}:{G}")
