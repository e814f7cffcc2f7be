"""Markov bases of toric ideals and the maximal degree of minimal generators."""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..graphs import SimpleGraph, blocks
from . import fibers as fib
from .groebner import saturate_all
from .lattice import in_span, integer_kernel, span_basis
from .points import MATCHING, PointConfiguration, lattice_points

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MarkovMove:
    """Integer vector ``u`` standing for the binomial ``x^{u+} - x^{u-}``."""

    vector: Tuple[int, ...]

    @property
    def plus(self) -> Tuple[int, ...]:
        return tuple(x if x > 0 else 0 for x in self.vector)

    @property
    def minus(self) -> Tuple[int, ...]:
        return tuple(-x if x < 0 else 0 for x in self.vector)

    @property
    def degree(self) -> int:
        return sum(x for x in self.vector if x > 0)

    def to_json(self) -> dict:
        return {
            "plus": [[i, x] for i, x in enumerate(self.vector) if x > 0],
            "minus": [[i, -x] for i, x in enumerate(self.vector) if x < 0],
            "degree": self.degree,
        }

    def binomial(self, names: Optional[Sequence[str]] = None) -> str:
        def mono(exps):
            parts = []
            for i, e in enumerate(exps):
                if e:
                    v = names[i] if names else f"x{i}"
                    parts.append(v if e == 1 else f"{v}^{e}")
            return "*".join(parts) or "1"

        return f"{mono(self.plus)} - {mono(self.minus)}"


def _sort_moves(moves) -> Tuple[MarkovMove, ...]:
    return tuple(sorted(moves, key=lambda m: (m.degree, m.vector)))


@dataclass(frozen=True)
class MarkovBasis:
    moves: Tuple[MarkovMove, ...]
    minimal: bool = False

    @property
    def degree_counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for m in self.moves:
            out[m.degree] = out.get(m.degree, 0) + 1
        return dict(sorted(out.items()))

    @property
    def max_degree(self) -> int:
        return max((m.degree for m in self.moves), default=0)

    def to_json(self, A: Optional[PointConfiguration] = None) -> dict:
        out = {
            "minimal": self.minimal,
            "degree_counts": {str(k): v for k, v in self.degree_counts.items()},
            "moves": [m.to_json() for m in self.moves],
        }
        if A is not None:
            out["points"] = [list(p) for p in A.points]
        return out


def lattice_kernel_basis(A: PointConfiguration) -> List[MarkovMove]:
    """Z-basis of the integer kernel of the homogenised point matrix."""
    if A.n == 0:
        return []
    return [MarkovMove(tuple(v)) for v in integer_kernel(A.matrix())]


def _quadratic_seeds(A: PointConfiguration) -> List[Tuple[int, ...]]:
    """Moves joining each degree-2 fiber as a star around its first element."""
    out = []
    for elems in fib.enumerate_fibers(A, 2).values():
        base = elems[0]
        for other in elems[1:]:
            u = [0] * A.n
            for i in base:
                u[i] += 1
            for i in other:
                u[i] -= 1
            out.append(tuple(u))
    return out


def markov_basis(
    A: PointConfiguration,
    max_pairs: Optional[int] = None,
    schedule: Optional[Sequence[int]] = None,
) -> MarkovBasis:
    """A generating set of the toric ideal of ``A``.

    The toric ideal is the saturation of any lattice ideal whose moves span
    the kernel lattice.  The starting moves are the degree-2 fiber moves,
    plus those kernel basis vectors they fail to span; the saturation is
    then done variable by variable (see ``groebner.saturate_all``).  The
    result is a reduced Groebner basis, usually not minimal.
    """
    if A.n == 0:
        return MarkovBasis(())
    kernel = integer_kernel(A.matrix())
    if not kernel:
        return MarkovBasis(())
    seeds = _quadratic_seeds(A)
    lattice = span_basis(seeds)
    for v in kernel:
        if not in_span(lattice, v):
            seeds.append(tuple(v))
            lattice = span_basis(seeds)
    moves = saturate_all(seeds, A.n, schedule=schedule, max_pairs=max_pairs)
    return MarkovBasis(_sort_moves(MarkovMove(tuple(u)) for u in moves))


@dataclass
class OmegaReport:
    omega: int
    counts: Dict[int, int]
    minimal_basis: MarkovBasis
    zero_ideal: bool
    empty_polytope: bool = False
    seconds: float = 0.0
    basis_size: int = 0

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "generator_counts": {str(k): v for k, v in sorted(self.counts.items())},
            "zero_ideal": self.zero_ideal,
            "empty_polytope": self.empty_polytope,
            "markov_basis_size": self.basis_size,
            "minimal_basis_size": len(self.minimal_basis.moves),
        }


def minimalize(B: MarkovBasis, A: PointConfiguration) -> OmegaReport:
    """Extract a minimal generating set from ``B`` degree by degree.

    For each multidegree ``b`` of degree ``k`` carried by ``B``, the fiber of
    ``b`` is split into components by the already kept moves (all of degree
    below ``k``); moves of ``B`` at ``b`` are kept exactly when they join two
    components, so ``components - 1`` of them survive.  Since ``B`` generates
    the ideal, every fiber ends up connected; a fiber that does not is an
    error in ``B``.
    """
    by_target: Dict[int, Dict[Tuple[int, ...], List[MarkovMove]]] = {}
    for m in B.moves:
        b = A.image(m.plus)
        by_target.setdefault(m.degree, {}).setdefault(b, []).append(m)
    kept: List[MarkovMove] = []
    counts: Dict[int, int] = {}
    for k in sorted(by_target):
        lower = [m.vector for m in kept if m.degree < k]
        new_here = []
        for b in sorted(by_target[k]):
            F = fib.fiber(A, b)
            index = {e: i for i, e in enumerate(F.elements)}
            uf = fib._move_components(list(F.elements), lower, A.n)
            for m in by_target[k][b]:
                i = index[fib._as_multiset(m.plus)]
                j = index[fib._as_multiset(m.minus)]
                if uf.union(i, j):
                    new_here.append(m)
            if len(uf.classes()) != 1:
                raise ValueError(f"fiber {b} is disconnected: the input does not generate the ideal")
        kept.extend(new_here)
        if new_here:
            counts[k] = len(new_here)
    zero = not kept
    omega = max(counts, default=2)
    return OmegaReport(
        omega=max(omega, 2),
        counts=counts,
        minimal_basis=MarkovBasis(_sort_moves(kept), minimal=True),
        zero_ideal=zero,
        empty_polytope=A.n == 0,
        basis_size=len(B.moves),
    )


def omega(A: PointConfiguration, max_pairs: Optional[int] = None) -> OmegaReport:
    """Exact maximal degree of minimal generators of the toric ideal of ``A``."""
    t0 = time.perf_counter()
    report = minimalize(markov_basis(A, max_pairs=max_pairs), A)
    report.seconds = time.perf_counter() - t0
    return report


def graph_omega(G: SimpleGraph, kind: str = MATCHING, max_pairs: Optional[int] = None) -> OmegaReport:
    return omega(lattice_points(G, kind), max_pairs=max_pairs)


def omega_via_blocks(G: SimpleGraph, max_pairs: Optional[int] = None) -> int:
    """Matching-polytope omega as the maximum over the blocks of ``G``."""
    best = 2
    for H in blocks(G).subgraphs(G):
        best = max(best, graph_omega(H, MATCHING, max_pairs).omega)
    return best
