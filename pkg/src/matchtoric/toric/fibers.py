"""Fibers of a point configuration and their connectivity under moves.

A fiber element is a degree-``k`` monomial, stored as the sorted tuple of
its point indices (a multiset).  Two elements are joined by an exchange of
size ``r`` when they share a sub-multiset of size ``k - r``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import BudgetExceeded
from .points import PointConfiguration

Multiset = Tuple[int, ...]


@dataclass(frozen=True)
class Fiber:
    degree: int
    target: Tuple[int, ...]
    elements: Tuple[Multiset, ...]

    def __len__(self) -> int:
        return len(self.elements)


def _as_counts(ms: Multiset, n: int) -> List[int]:
    c = [0] * n
    for i in ms:
        c[i] += 1
    return c


def _as_multiset(counts: Sequence[int]) -> Multiset:
    return tuple(i for i, c in enumerate(counts) for _ in range(c))


def fiber(A: PointConfiguration, b: Sequence[int]) -> Fiber:
    """All degree-``b[-1]`` multisets of points whose homogenised sum is ``b``."""
    b = tuple(int(x) for x in b)
    if len(b) != A.dim + 1:
        raise ValueError(f"target must have {A.dim + 1} coordinates")
    if min(b) < 0:
        raise ValueError("target must be non-negative")
    k = b[-1]
    pts = A.points
    n = A.n
    out: List[Multiset] = []
    dead = set()
    chosen: List[int] = []

    def rec(start: int, left: int, residual: Tuple[int, ...]) -> bool:
        if left == 0:
            if not any(residual):
                out.append(tuple(chosen))
                return True
            return False
        key = (start, left, residual)
        if key in dead:
            return False
        found = False
        for i in range(start, n):
            p = pts[i]
            if all(x <= y for x, y in zip(p, residual)):
                chosen.append(i)
                if rec(i, left - 1, tuple(y - x for x, y in zip(p, residual))):
                    found = True
                chosen.pop()
        if not found:
            dead.add(key)
        return found

    if k >= 1 and n:
        rec(0, k, b[:-1])
    return Fiber(k, b, tuple(out))


class _Packer:
    """Encodes homogenised points as ints so that multiset sums are additions."""

    def __init__(self, A: PointConfiguration, k: int):
        top = max([max(p, default=0) for p in A.points] + [1])
        self.width = max(1, (top * k).bit_length() + 1)
        self.dim = A.dim + 1
        self.codes = [self.encode(A.homogenized(i)) for i in range(A.n)]

    def encode(self, vec: Sequence[int]) -> int:
        out = 0
        for c, x in enumerate(vec):
            out |= x << (self.width * c)
        return out

    def decode(self, code: int) -> Tuple[int, ...]:
        mask = (1 << self.width) - 1
        return tuple((code >> (self.width * c)) & mask for c in range(self.dim))


def enumerate_fibers(
    A: PointConfiguration, k: int, max_multisets: Optional[int] = None
) -> Dict[Tuple[int, ...], List[Multiset]]:
    """Every nonempty fiber of degree ``k``, keyed by target, in ascending target order."""
    n = A.n
    if k < 1 or n == 0:
        return {}
    total = _multiset_count(n, k)
    if max_multisets is not None and total > max_multisets:
        raise BudgetExceeded(
            f"degree {k} has {total} monomials, above the budget of {max_multisets}",
            {"degree": k, "monomials": total},
        )
    pk = _Packer(A, k)
    codes = pk.codes
    groups: Dict[int, List[Multiset]] = {}
    for combo in itertools.combinations_with_replacement(range(n), k):
        s = 0
        for i in combo:
            s += codes[i]
        bucket = groups.get(s)
        if bucket is None:
            groups[s] = [combo]
        else:
            bucket.append(combo)
    decoded = {pk.decode(code): elems for code, elems in groups.items()}
    return {t: decoded[t] for t in sorted(decoded)}


def _multiset_count(n: int, k: int) -> int:
    from math import comb

    return comb(n + k - 1, k)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self) -> List[List[int]]:
        out: Dict[int, List[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())


def _exchange_components(elements: Sequence[Multiset], r: int) -> _UnionFind:
    uf = _UnionFind(len(elements))
    if not elements:
        return uf
    k = len(elements[0])
    core = k - r
    if core <= 0:
        for i in range(1, len(elements)):
            uf.union(0, i)
        return uf
    owner: Dict[Multiset, int] = {}
    for idx, e in enumerate(elements):
        for c in set(itertools.combinations(e, core)):
            prev = owner.get(c)
            if prev is None:
                owner[c] = idx
            else:
                uf.union(prev, idx)
    return uf


def _move_components(elements: Sequence[Multiset], moves: Iterable[Sequence[int]], n: int) -> _UnionFind:
    index = {e: i for i, e in enumerate(elements)}
    uf = _UnionFind(len(elements))
    sparse = []
    for u in moves:
        plus = [(i, x) for i, x in enumerate(u) if x > 0]
        minus = [(i, -x) for i, x in enumerate(u) if x < 0]
        sparse.append((plus, minus))
    for idx, e in enumerate(elements):
        counts = _as_counts(e, n)
        for plus, minus in sparse:
            for take, give in ((plus, minus), (minus, plus)):
                if all(counts[i] >= x for i, x in take):
                    nb = list(counts)
                    for i, x in take:
                        nb[i] -= x
                    for i, x in give:
                        nb[i] += x
                    j = index.get(_as_multiset(nb))
                    if j is None:
                        raise ValueError("move leaves the fiber; wrong configuration?")
                    uf.union(idx, j)
    return uf


def fiber_components(
    F: Fiber,
    *,
    exchange_size: Optional[int] = None,
    moves: Optional[Iterable[Sequence[int]]] = None,
    n: Optional[int] = None,
) -> List[List[Multiset]]:
    """Connected components of a fiber, each sorted, components sorted.

    Give either ``exchange_size`` (elements adjacent when they differ in at
    most that many points; ``F.degree - 1`` means "all moves of lower
    degree") or explicit ``moves`` (vectors over ``n`` points).
    """
    elems = list(F.elements)
    if exchange_size is not None:
        uf = _exchange_components(elems, exchange_size)
    elif moves is not None:
        if n is None:
            raise ValueError("explicit moves need the number of points n")
        uf = _move_components(elems, moves, n)
    else:
        raise ValueError("give exchange_size or moves")
    return [[elems[i] for i in cls] for cls in uf.classes()]


@dataclass
class VerificationReport:
    """Outcome of checking fiber connectivity under exchanges of size <= r.

    Only degrees ``r+1..max_degree`` are inspected, so a pass is evidence,
    not a proof, that every minimal generator has degree at most ``r``.
    """

    r: int
    max_degree: int
    passed: bool
    fibers_checked: Dict[int, int] = field(default_factory=dict)
    counterexample: Optional[dict] = None
    complete: bool = True
    note: str = "truncated evidence: fibers above max_degree were not examined"

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "max_degree": self.max_degree,
            "passed": self.passed,
            "complete": self.complete,
            "fibers_checked": {str(k): v for k, v in sorted(self.fibers_checked.items())},
            "counterexample": self.counterexample,
            "note": self.note,
        }


def verify_omega_le(
    A: PointConfiguration,
    r: int,
    max_degree: Optional[int] = None,
    max_multisets: Optional[int] = 5_000_000,
) -> VerificationReport:
    """Check that every fiber of degree ``r < k <= max_degree`` is connected
    by exchanges of at most ``r`` points.  Stops at the first disconnected fiber."""
    if r < 2:
        raise ValueError("r must be at least 2")
    D = r + 2 if max_degree is None else max_degree
    if D < r:
        raise ValueError("max_degree must be at least r")
    report = VerificationReport(r=r, max_degree=D, passed=True)
    for k in range(r + 1, D + 1):
        try:
            fibers = enumerate_fibers(A, k, max_multisets)
        except BudgetExceeded as exc:
            report.complete = False
            exc.partial["report"] = report.to_json()
            raise
        checked = 0
        for target, elems in fibers.items():
            if len(elems) < 2:
                continue
            checked += 1
            uf = _exchange_components(elems, r)
            classes = uf.classes()
            if len(classes) > 1:
                report.passed = False
                report.fibers_checked[k] = checked
                report.counterexample = {
                    "degree": k,
                    "target": list(target),
                    "fiber_size": len(elems),
                    "components": len(classes),
                    "witness": [list(elems[classes[0][0]]), list(elems[classes[1][0]])],
                }
                return report
        report.fibers_checked[k] = checked
    return report


def generator_counts_by_fibers(
    A: PointConfiguration, max_degree: int, max_multisets: Optional[int] = None
) -> Dict[int, int]:
    """Minimal generator counts per degree, from fiber connectivity alone.

    At degree ``k`` each fiber contributes (components under exchanges of
    size ``k - 1``) - 1.  Independent of any Groebner computation.
    """
    counts: Dict[int, int] = {}
    for k in range(2, max_degree + 1):
        total = 0
        for elems in enumerate_fibers(A, k, max_multisets).values():
            if len(elems) > 1:
                total += len(_exchange_components(elems, k - 1).classes()) - 1
        counts[k] = total
    return counts
