"""Integer linear algebra: Hermite and Smith normal forms, kernels, solving.

Matrices are lists of rows of Python ints.
"""
from __future__ import annotations

from math import gcd
from typing import Sequence


def _egcd(a: int, b: int):
    """``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def column_hnf(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Column-style Hermite normal form.

    Returns ``(H, U, pivots)`` with ``A @ U == H``, ``U`` unimodular and ``H``
    in column echelon form: column ``c`` of ``H`` has its leading nonzero in
    row ``pivots[c]``, that entry is positive, and entries to its left in the
    same row are reduced into ``[0, pivot)``.  Columns ``len(pivots):`` of
    ``H`` are zero, so the matching columns of ``U`` span the integer kernel.
    """
    h = [list(map(int, r)) for r in a]
    k = ncols if ncols is not None else (len(h[0]) if h else 0)
    u = [[int(i == j) for j in range(k)] for i in range(k)]

    def colop(i, j, p, q, r, s):
        # (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
        for m in (h, u):
            for row in m:
                x, y = row[i], row[j]
                row[i], row[j] = p * x + q * y, r * x + s * y

    pivots = []
    c = 0
    for i in range(len(h)):
        if c == k:
            break
        for j in range(c + 1, k):
            if h[i][j] == 0:
                continue
            x, y = h[i][c], h[i][j]
            g, s, t = _egcd(x, y)
            colop(c, j, s, t, -y // g, x // g)
        if h[i][c] == 0:
            continue
        if h[i][c] < 0:
            for m in (h, u):
                for row in m:
                    row[c] = -row[c]
        piv = h[i][c]
        for j in range(c):
            q = h[i][j] // piv
            if q:
                for m in (h, u):
                    for row in m:
                        row[j] -= q * row[c]
        pivots.append(i)
        c += 1
    return h, u, pivots


def integer_kernel(a: Sequence[Sequence[int]], ncols: int):
    """Basis (as a list of vectors) of ``{m in Z^ncols : A m = 0}``, HNF-reduced."""
    if not a:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    _, u, pivots = column_hnf(a, ncols)
    basis = [[u[r][c] for r in range(ncols)] for c in range(len(pivots), ncols)]
    return lattice_basis(basis, ncols)


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int):
    """An integer solution of ``A m = b`` or ``None``."""
    if not a:
        return [0] * ncols
    h, u, pivots = column_hnf(a, ncols)
    y = [0] * ncols
    for c, i in enumerate(pivots):
        rest = b[i] - sum(h[i][j] * y[j] for j in range(c))
        if rest % h[i][c]:
            return None
        y[c] = rest // h[i][c]
    for i, row in enumerate(h):
        if sum(row[j] * y[j] for j in range(len(pivots))) != b[i]:
            return None
    return [sum(u[r][c] * y[c] for c in range(ncols)) for r in range(ncols)]


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int):
    """Canonical (row Hermite) basis of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    cols = [list(col) for col in zip(*vectors)]
    h, _, pivots = column_hnf(cols, len(vectors))
    return [[h[r][c] for r in range(dim)] for c in range(len(pivots))]


def smith_invariants(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Nonzero invariant factors of ``A`` in divisibility order.

    Alternates column and row Hermite reductions until the matrix is
    diagonal, then fixes the divisibility chain with gcd/lcm swaps.
    """
    m = [list(map(int, r)) for r in a]
    k = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m or k == 0:
        return []
    cur = m
    transposed = False
    while not _is_diagonal(cur):
        h, _, _ = column_hnf(cur, len(cur[0]))
        cur = [list(col) for col in zip(*h)]
        transposed = not transposed
    diag = [abs(cur[i][i]) for i in range(min(len(cur), len(cur[0]))) if cur[i][i]]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a_, b_ = diag[i], diag[j]
                if b_ % a_:
                    g = gcd(a_, b_)
                    diag[i], diag[j] = g, a_ * b_ // g
                    changed = True
    return sorted(diag)


def _is_diagonal(m):
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m[0])) if i != j)


def integer_rank(a: Sequence[Sequence[int]], ncols: int) -> int:
    if not a:
        return 0
    return len(column_hnf(a, ncols)[2])
