"""Integer kernels by Hermite-style row reduction.

Everything here works on lists of Python ints, so there is no overflow.
"""

from __future__ import annotations

from typing import List, Sequence


def _xgcd(a: int, b: int):
    x, nx = 1, 0
    y, ny = 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def hermite_rows(rows: List[List[int]], ncols: int) -> int:
    """Bring ``rows`` to row-echelon form on the first ``ncols`` columns.

    Uses only unimodular row operations, in place.  Entries above each pivot
    are reduced into ``[0, pivot)`` as in Hermite normal form.  Returns the
    number of pivot rows (the rank of the leading block).
    """
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        # Fold every row below r into row r by extended gcd steps.
        for i in range(r + 1, nrows):
            b = rows[i][c]
            if b == 0:
                continue
            a = rows[r][c]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            ri, rr = rows[i], rows[r]
            rows[r] = [x * p + y * q for p, q in zip(rr, ri)]
            rows[i] = [-bg * p + ag * q for p, q in zip(rr, ri)]
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-v for v in rows[r]]
            piv = rows[r][c]
            for i in range(r):
                q = rows[i][c] // piv
                if q:
                    rows[i] = [p - q * s for p, s in zip(rows[i], rows[r])]
            r += 1
    return r


def integer_kernel(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Return a Z-basis of ``{u in Z^n : matrix @ u = 0}``.

    ``matrix`` is m x n.  The basis is read off the identity block of the
    row-reduced ``[matrix^T | I_n]`` and then brought to Hermite form itself,
    which keeps entries small for 0/1 inputs.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = []
    for j in range(n):
        rows.append([matrix[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)])
    rank = hermite_rows(rows, m)
    kernel = [row[m:] for row in rows[rank:]]
    if kernel:
        hermite_rows(kernel, n)
        kernel = [v for v in kernel if any(v)]
    return kernel


def rank(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix:
        return 0
    rows = [list(r) for r in matrix]
    return hermite_rows(rows, len(rows[0]))


def in_span(basis_rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Whether ``v`` is an integer combination of Hermite-reduced ``basis_rows``."""
    w = list(v)
    for row in basis_rows:
        c = next(i for i, x in enumerate(row) if x)
        if w[c] % row[c]:
            return False
        q = w[c] // row[c]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def span_basis(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """Hermite-reduced basis of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    rows = [list(v) for v in vectors]
    r = hermite_rows(rows, len(rows[0]))
    return rows[:r]
