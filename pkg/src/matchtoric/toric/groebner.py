"""Binomial Buchberger algorithm and lattice-ideal saturation.

Monomials are packed into one Python int per term: variable ``x_i`` owns a
fixed-width slot whose top bit is a guard that must stay clear.  Packing
puts the *smallest* variable of the current degree-reverse-lexicographic
order in the most significant slot, which turns the order into a plain
integer comparison for homogeneous binomials (the larger monomial is the
smaller int).  Divisibility, lcm and support tests are word-parallel bit
tricks on these ints.

A binomial is a ``(lead, trail)`` pair of packed monomials.  Reducing a
binomial by binomials keeps it a binomial, so coefficients never appear.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import BudgetExceeded, ExponentOverflow

log = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass
class GroebnerStats:
    pairs_considered: int = 0
    zero_reductions: int = 0
    basis_size: int = 0


class Packing:
    """Packs exponent vectors for one variable order.

    ``order`` lists variable indices from largest to smallest; the last one
    sits in the top slot and is the variable a saturation step removes.
    """

    def __init__(self, order: Sequence[int], field: int = 8):
        self.n = len(order)
        self.field = field
        self.fmask = (1 << field) - 1
        self.emax = (1 << (field - 1)) - 1
        self.order = list(order)
        self.slot = [0] * self.n
        for pos, var in enumerate(self.order):
            self.slot[var] = pos
        self.guard = sum(1 << (field * i + field - 1) for i in range(self.n))
        self.ones = sum(1 << (field * i) for i in range(self.n))
        self.top_shift = field * (self.n - 1)

    def pack(self, exps: Sequence[int]) -> int:
        out = 0
        for var, e in enumerate(exps):
            if e:
                if e > self.emax:
                    raise ExponentOverflow(f"exponent {e} exceeds {self.emax}")
                out |= e << (self.field * self.slot[var])
        return out

    def unpack(self, m: int) -> List[int]:
        exps = [0] * self.n
        pos = 0
        f, fm = self.field, self.fmask
        while m:
            e = m & fm
            if e:
                exps[self.order[pos]] = e
            m >>= f
            pos += 1
        return exps

    def divides(self, a: int, b: int) -> bool:
        h = self.guard
        return ((b | h) - a) & h == h

    def lcm(self, a: int, b: int) -> int:
        h = self.guard
        mask = ((((a | h) - b) & h) >> (self.field - 1)) * self.fmask
        return (a & mask) | (b & ~mask)

    def support(self, a: int) -> int:
        h = self.guard
        return ((a | h) - self.ones) & h

    def degree(self, a: int) -> int:
        # Casting out 2^field - 1; exact while the degree stays below it.
        return a % self.fmask

    def top(self, a: int) -> int:
        return a >> self.top_shift


class BinomialBasis:
    """Buchberger state for one degree-reverse-lex order.

    Critical pairs are managed with the Gebauer-Moller criteria and chosen
    by the normal strategy (smallest lcm first).
    """

    def __init__(self, packing: Packing, max_pairs: Optional[int] = None):
        self.pk = packing
        self.leads: List[int] = []
        self.trails: List[int] = []
        self.active: Dict[int, int] = {}  # lead -> store index; leads form an antichain
        self.pairs: List[Tuple[int, int, int, int]] = []
        self.stats = GroebnerStats()
        self.max_pairs = max_pairs
        self._nf_cache: Dict[int, int] = {}

    def _find_divisor(self, m: int) -> int:
        active = self.active
        if len(active) < 48:
            h = self.pk.guard
            mh = m | h
            for lead, idx in active.items():
                if (mh - lead) & h == h:
                    return idx
            return -1
        # Enumerate divisors of m (degree >= 2) and look them up.
        f, fm = self.pk.field, self.pk.fmask
        divs = [0]
        pos = 0
        x = m
        while x:
            e = x & fm
            if e:
                shift = f * pos
                if e == 1:
                    step = 1 << shift
                    divs += [d + step for d in divs]
                else:
                    divs = [d + (k << shift) for d in divs for k in range(e + 1)]
            x >>= f
            pos += 1
        for d in divs:
            idx = active.get(d)
            if idx is not None:
                return idx
        return -1

    def normal_form(self, m: int) -> int:
        cache = self._nf_cache
        start = m
        m = cache.get(m, m)
        guard = self.pk.guard
        leads, trails = self.leads, self.trails
        while True:
            idx = self._find_divisor(m)
            if idx < 0:
                cache[start] = m
                return m
            m = m - leads[idx] + trails[idx]
            if m & guard:
                raise ExponentOverflow("exponent overflow during reduction")

    def _update(self, hidx: int) -> None:
        pk = self.pk
        h = pk.guard
        fm = pk.fmask
        fsh = pk.field - 1
        leads = self.leads
        lh = leads[hidx]
        lhh = lh | h
        sh = ((lh | h) - pk.ones) & h
        ones = pk.ones

        # New pairs (h, g), grouped by lcm.
        groups: Dict[int, List[Tuple[int, bool]]] = {}
        for lg, g in self.active.items():
            mask = ((((lhh) - lg) & h) >> fsh) * fm
            L = (lh & mask) | (lg & ~mask)
            coprime = (((lg | h) - ones) & h) & sh == 0
            groups.setdefault(L, []).append((g, coprime))
        # Criterion M: drop lcms with a proper divisor among the new lcms.
        minimal: List[int] = []
        survivors = []
        for L in sorted(groups, key=lambda x: x % fm):
            Lh = L | h
            if any((Lh - m) & h == h for m in minimal):
                continue
            minimal.append(L)
            members = groups[L]
            # Criterion F plus the coprime (product) criterion.
            if any(c for _, c in members):
                continue
            survivors.append((L, members[0][0]))

        # Criterion B on the old pairs.
        new_pairs = []
        for item in self.pairs:
            L = -item[1]
            if ((L | h) - lh) & h == h:
                li = leads[item[2]]
                lj = leads[item[3]]
                mi = ((((li | h) - lh) & h) >> fsh) * fm
                mj = ((((lj | h) - lh) & h) >> fsh) * fm
                if (li & mi) | (lh & ~mi) != L and (lj & mj) | (lh & ~mj) != L:
                    continue
            new_pairs.append(item)
        for L, g in survivors:
            new_pairs.append((L % fm, -L, g, hidx))
        heapq.heapify(new_pairs)
        self.pairs = new_pairs
        for lg in [lg for lg in self.active if ((lg | h) - lh) & h == h]:
            del self.active[lg]
        self.active[lh] = hidx

    def add(self, lead: int, trail: int) -> bool:
        """Reduce the binomial ``lead - trail``; insert it if it is nonzero."""
        p = self.normal_form(lead)
        q = self.normal_form(trail)
        if p == q:
            return False
        if q < p:
            p, q = q, p
        idx = len(self.leads)
        self.leads.append(p)
        self.trails.append(q)
        self._update(idx)
        return True

    def run(self) -> None:
        stats = self.stats
        leads, trails = self.leads, self.trails
        while self.pairs:
            _, negL, i, j = heapq.heappop(self.pairs)
            L = -negL
            stats.pairs_considered += 1
            if self.max_pairs is not None and stats.pairs_considered > self.max_pairs:
                raise BudgetExceeded(
                    f"critical-pair budget of {self.max_pairs} exceeded",
                    {"pairs_considered": stats.pairs_considered},
                )
            if not self.add(L - leads[i] + trails[i], L - leads[j] + trails[j]):
                stats.zero_reductions += 1
        stats.basis_size = len(self.active)

    def reduced(self) -> List[Tuple[int, int]]:
        """Reduced Groebner basis as ``(lead, trail)`` pairs sorted by lead."""
        return [(lead, self.normal_form(self.trails[self.active[lead]])) for lead in sorted(self.active)]


def _split(u: Sequence[int]) -> Tuple[List[int], List[int]]:
    return [x if x > 0 else 0 for x in u], [-x if x < 0 else 0 for x in u]


def _groebner_packed(moves, order, max_pairs, field):
    pk = Packing(order, field)
    bb = BinomialBasis(pk, max_pairs)
    gens = []
    for u in moves:
        plus, minus = _split(u)
        gens.append((pk.pack(plus), pk.pack(minus)))
    # Feed generators smallest first so early reductions stay cheap.
    gens.sort(key=lambda t: (pk.degree(t[0]), -min(t)))
    for a, b in gens:
        bb.add(a, b)
    bb.run()
    return pk, bb.reduced(), bb.stats


def groebner(
    moves: Iterable[Sequence[int]],
    order: Sequence[int],
    max_pairs: Optional[int] = None,
) -> Tuple[Packing, List[Tuple[int, int]], GroebnerStats]:
    """Reduced Groebner basis of ``<x^{u+} - x^{u-} : u in moves>``.

    ``order`` lists variables largest first for degree reverse lex; all moves
    must be homogeneous (coordinate sum zero).  Narrow exponent slots are
    tried first and widened if an exponent outgrows them.
    """
    moves = [tuple(u) for u in moves]
    for u in moves:
        if sum(u) != 0:
            raise ValueError(f"move {u} is not homogeneous")
    for field in (8, 16, 32):
        try:
            return _groebner_packed(moves, order, max_pairs, field)
        except ExponentOverflow:
            log.debug("widening exponent slots beyond %d bits", field)
    raise ExponentOverflow("exponents exceed 31 bits")


def saturate_all(
    moves: Sequence[Sequence[int]],
    n: int,
    schedule: Optional[Sequence[int]] = None,
    max_pairs: Optional[int] = None,
) -> List[Vector]:
    """Generators of ``<x^{u+} - x^{u-} : u in moves> : (x_1 ... x_n)^inf``.

    One variable at a time: a reverse-lex Groebner basis with that variable
    last, then every element divided by the largest power of the variable it
    contains.  ``schedule`` fixes the variable order (default: index order).
    The result is the last reduced Groebner basis, as sorted move vectors
    ``lead - trail``.
    """
    current = sorted({tuple(u) for u in moves})
    if not current:
        return []
    schedule = list(range(n)) if schedule is None else list(schedule)
    for var in schedule:
        order = [v for v in range(n) if v != var] + [var]
        pk, basis, stats = groebner(current, order, max_pairs)
        nxt = set()
        divided = 0
        for lead, trail in basis:
            e = min(pk.top(lead), pk.top(trail))
            if e:
                divided += 1
                lead -= e << pk.top_shift
                trail -= e << pk.top_shift
            lv = pk.unpack(lead)
            tv = pk.unpack(trail)
            nxt.add(tuple(a - b for a, b in zip(lv, tv)))
        log.debug(
            "x%d: %d elements, %d pairs, %d divided", var, len(basis), stats.pairs_considered, divided
        )
        current = sorted(nxt)
    return current
