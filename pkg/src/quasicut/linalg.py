"""Gaussian elimination over an exact field.

Entries may be ``Fraction`` or :class:`~quasicut.exactfield.FieldElement`;
anything with exact ``+ - * /`` and a trustworthy ``== 0`` works.  Matrices
are sequences of rows.
"""
from __future__ import annotations

from typing import Sequence

Matrix = Sequence[Sequence]


def rref(rows: Matrix):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def transpose(rows: Matrix):
    return [tuple(col) for col in zip(*rows)]


def matmul(a: Matrix, b: Matrix):
    bt = transpose(b)
    return [tuple(sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in bt) for row in a]


def matvec(a: Matrix, v: Sequence):
    return tuple(sum((x * y for x, y in zip(row, v)), 0 * v[0]) for row in a)


def dot(u: Sequence, v: Sequence):
    total = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        total = total + x * y
    return total


def nullspace(rows: Matrix, ncols: int | None = None):
    """Basis of ``{x : A x = 0}``, one vector per free column, in column order."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    zero = _zero_like(rows)
    one = zero + 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for row, p in zip(red, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Sequence):
    """A solution of ``A x = b`` (free variables set to zero), or ``None``."""
    aug = [tuple(row) + (bi,) for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    ncols = len(a[0])
    if pivots and pivots[-1] == ncols:
        return None
    zero = _zero_like(a)
    x = [zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(a: Matrix):
    n = len(a)
    zero = _zero_like(a)
    one = zero + 1
    aug = [tuple(row) + tuple(one if i == j else zero for j in range(n)) for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def in_row_space(rows: Matrix, v: Sequence) -> bool:
    if not rows:
        return all(x == 0 for x in v)
    return rank(list(rows) + [v]) == rank(rows)


def same_row_space(a: Matrix, b: Matrix) -> bool:
    """Mutual row-space containment."""
    return all(in_row_space(a, r) for r in b) and all(in_row_space(b, r) for r in a)


def _zero_like(rows):
    for row in rows:
        for x in row:
            return x * 0
    return 0
