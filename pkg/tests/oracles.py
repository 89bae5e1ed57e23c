"""Slow, independent reference implementations used to cross-check the library.

Nothing here calls into ``quasicut`` routines: vertices come from plain
Fraction Gaussian elimination, Smith forms from textbook row/column
reduction, and field arithmetic from polynomials reduced modulo the
minimal relations of the tower.  Only the coefficient layout of a field
element (bit ``i`` of the index marks the ``i``-th square root) is read.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations


@dataclass(frozen=True)
class OracleConfig:
    seed: int = 0
    max_dim: int = 3
    max_facets: int = 8
    max_entry: int = 4
    max_den: int = 3

    def __post_init__(self):
        if not 1 <= self.max_dim <= 3:
            raise ValueError("max_dim must be in 1..3")
        if not self.max_dim + 1 <= self.max_facets <= 8:
            raise ValueError("max_facets must be in n+1..8")
        if self.max_entry < 1 or self.max_den < 1:
            raise ValueError("entry bounds must be positive")

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def rational(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.max_entry, self.max_entry), rng.randint(1, self.max_den))


# ---------------------------------------------------------------------------
# vertices

def _solve(rows, rhs):
    """Unique solution of a square system over Fractions, or ``None``."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def naive_vertices(normals, offsets):
    """Vertices of ``{mu : <mu, X_j> >= lambda_j}`` by trying every n-subset (rational input)."""
    n = len(normals[0])
    out = set()
    for subset in combinations(range(len(normals)), n):
        mu = _solve([normals[j] for j in subset], [offsets[j] for j in subset])
        if mu is None:
            continue
        if all(sum(a * Fraction(b) for a, b in zip(mu, x)) >= Fraction(l)
               for x, l in zip(normals, offsets)):
            out.add(mu)
    return out


# ---------------------------------------------------------------------------
# Smith normal form

def naive_snf(matrix):
    """Nonzero invariant factors by schoolbook pivoting on the smallest entry."""
    a = [list(map(int, r)) for r in matrix]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    out = []
    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                return out
            _, i, j = min(entries)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, cols):
                q = a[t][j] // p
                for r in a:
                    r[j] -= q * r[t]
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        out.append(abs(a[t][t]))
    return out


# ---------------------------------------------------------------------------
# field arithmetic via polynomials

def _to_poly(coeffs):
    """Coefficient vector -> {(e1, e2): c} with ``e_i`` the power of the i-th root."""
    poly = {}
    for idx, c in enumerate(coeffs):
        if c:
            poly[(idx & 1, (idx >> 1) & 1)] = Fraction(c)
    return poly


def _reduce(poly, r1, r2):
    """Reduce with ``x^2 = r1`` and ``y^2 = r2(x)`` (``r2`` a poly in x) until exponents are <= 1."""
    poly = dict(poly)
    while True:
        key = next((k for k in poly if k[0] > 1 or k[1] > 1), None)
        if key is None:
            return {k: v for k, v in poly.items() if v != 0}
        c = poly.pop(key)
        e1, e2 = key
        if e1 > 1:
            terms = {(e1 - 2, e2): c * r1}
        else:
            terms = {(e1 + a, e2 - 2): c * v for (a, _), v in r2.items()}
        for k, v in terms.items():
            poly[k] = poly.get(k, Fraction(0)) + v


def _mul(p, q, r1, r2):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, Fraction(0)) + c1 * c2
    return _reduce(out, r1, r2)


def _add(p, q, s=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, Fraction(0)) + s * v
    return {k: v for k, v in out.items() if v != 0}


def poly_field_check(a, b, op: str) -> bool:
    """Whether ``a op b`` computed by the library agrees with polynomial arithmetic.

    ``a`` and ``b`` are elements of the same tower of depth at most 2;
    ``op`` is one of ``+ - * /``.
    """
    tower = a.tower
    if tower.depth > 2:
        raise ValueError("depth must be at most 2")
    radicands = [tuple(r.coeffs) for r in tower.radicands]
    r1 = Fraction(radicands[0][0]) if radicands else Fraction(0)
    r2 = _to_poly(radicands[1]) if len(radicands) > 1 else {}
    bc = tuple(b.coeffs) + (0,) * (len(a.coeffs) - len(b.coeffs))
    pa, pb = _to_poly(a.coeffs), _to_poly(bc)
    if op == "+":
        got, want = a + b, _add(pa, pb)
    elif op == "-":
        got, want = a - b, _add(pa, pb, -1)
    elif op == "*":
        got, want = a * b, _mul(pa, pb, r1, r2)
    elif op == "/":
        got = a / b
        return _mul(_to_poly(got.coeffs), pb, r1, r2) == {k: v for k, v in pa.items() if v}
    else:
        raise ValueError(f"unknown op {op!r}")
    return _to_poly(got.coeffs) == want
