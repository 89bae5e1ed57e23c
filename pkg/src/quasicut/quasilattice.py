"""Quasilattices: finitely generated subgroups of R^n that span R^n.

Every question about a quasilattice reduces to integer linear algebra once
each field coordinate is expanded over the rational basis of the field
tower (``2**k`` rationals per coordinate) and denominators are cleared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactfield import FieldElement, FieldTower, common_tower, coerce
from . import intlinalg, linalg

__all__ = [
    "Quasilattice",
    "MembershipWitness",
    "LineSubgroup",
    "GroupPresentation",
    "QuasilatticeError",
    "contains",
    "line_subgroup",
    "extend",
    "quotient",
    "ray_scale",
    "standard_lattice",
]


class QuasilatticeError(ValueError):
    pass


Vector = tuple


def _vec(x, tower: FieldTower) -> Vector:
    return tuple(coerce(c, tower) for c in x)


def _expand(vectors: Sequence[Vector], tower: FieldTower):
    """Rational matrix with one column per vector, one row per (coordinate, basis element)."""
    n = len(vectors[0]) if vectors else 0
    dim = tower.dimension
    rows = []
    for a in range(n):
        for b in range(dim):
            rows.append([coerce(v[a], tower).coeffs[b] for v in vectors])
    return rows


def _clear(rows):
    """Scale a rational matrix (list of rows) to integers, row by row."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


@dataclass(frozen=True)
class MembershipWitness:
    """Integer coefficients ``m`` with ``sum(m_i * Y_i) == target``."""

    coefficients: tuple

    def __neg__(self):
        return MembershipWitness(tuple(-m for m in self.coefficients))

    def padded(self, q: int) -> "MembershipWitness":
        return MembershipWitness(self.coefficients + (0,) * (q - len(self.coefficients)))


@dataclass(frozen=True)
class GroupPresentation:
    """A finitely generated abelian group ``Z^r + Z/t_1 + ... + Z/t_s`` with ``t_i | t_{i+1}``."""

    free_rank: int
    torsion_orders: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_orders

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank + len(self.torsion_orders) <= 1

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion_orders:
            out *= t
        return out

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion_orders)
        return " + ".join(parts)


def _presentation(q: int, relation_columns, ncols: int) -> GroupPresentation:
    """Present ``Z^q / span(columns)``."""
    if not relation_columns:
        return GroupPresentation(q)
    rows = [list(r) for r in zip(*relation_columns)]
    inv = intlinalg.smith_invariants(rows, ncols)
    return GroupPresentation(q - len(inv), tuple(t for t in inv if t > 1))


class Quasilattice:
    """The Z-span of ``generators``; they must span R^n over R.

    The relation lattice ``{m : sum m_i Y_i = 0}`` is computed once at
    construction.  Equality is mutual containment, since dense quasilattices
    have no canonical basis.
    """

    def __init__(self, generators: Sequence[Sequence], tower: FieldTower | None = None):
        if not generators:
            raise QuasilatticeError("a quasilattice needs generators")
        tower = tower or common_tower(list(generators))
        gens = tuple(_vec(g, tower) for g in generators)
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise QuasilatticeError("generators have different lengths")
        if linalg.rank([list(g) for g in gens]) != n:
            raise QuasilatticeError("generators do not span R^n")
        self.tower = tower
        self.generators = gens
        self.ambient_dim = n
        self._int_rows = _clear(_expand(gens, tower))
        self.relations = tuple(tuple(v) for v in intlinalg.integer_kernel(self._int_rows, len(gens)))
        self.free_rank = len(gens) - len(self.relations)

    @property
    def q(self) -> int:
        return len(self.generators)

    @property
    def is_lattice(self) -> bool:
        return self.free_rank == self.ambient_dim

    def __repr__(self):
        return f"Quasilattice(n={self.ambient_dim}, q={self.q}, rank={self.free_rank})"

    def __eq__(self, other):
        if not isinstance(other, Quasilattice):
            return NotImplemented
        if self is other:
            return True
        if self.generators == other.generators:
            return True
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators)

    def __hash__(self):
        return hash((self.ambient_dim, self.free_rank))

    def combine(self, m: Sequence[int]) -> Vector:
        zero = self.tower.zero
        return tuple(sum((mi * g[a] for mi, g in zip(m, self.generators)), zero)
                     for a in range(self.ambient_dim))

    def contains(self, x: Sequence) -> MembershipWitness | None:
        return contains(self, x)

    def line_subgroup(self, y: Sequence) -> "LineSubgroup":
        return line_subgroup(self, y)

    def extend(self, y: Sequence) -> "Quasilattice":
        return extend(self, y)

    def ray_scale(self, x: Sequence):
        return ray_scale(self, x)


def standard_lattice(n: int, tower: FieldTower | None = None) -> Quasilattice:
    """Z^n."""
    return Quasilattice([tuple(int(i == j) for j in range(n)) for i in range(n)], tower)


def _tower_for(q: Quasilattice, *vectors) -> FieldTower:
    return common_tower(list(q.generators), list(vectors))


def contains(q: Quasilattice, x: Sequence) -> MembershipWitness | None:
    if len(x) != q.ambient_dim:
        raise QuasilatticeError("dimension mismatch")
    tower = _tower_for(q, x)
    cols = list(q.generators) + [_vec(x, tower)]
    rows = _clear(_expand(cols, tower))
    a = [r[:-1] for r in rows]
    b = [r[-1] for r in rows]
    m = intlinalg.solve_integer(a, b, q.q)
    if m is None:
        return None
    w = MembershipWitness(_shorten(tuple(m), q.relations))
    assert q.combine(w.coefficients) == tuple(coerce(c, tower) for c in x)
    return w


def _shorten(m: tuple, relations) -> tuple:
    """Greedy L1 descent over the relation lattice; deterministic."""

    def key(v):
        return (sum(abs(x) for x in v), tuple(-x for x in v))

    improved = True
    while improved:
        improved = False
        for r in relations:
            for s in (1, -1):
                cand = tuple(x + s * y for x, y in zip(m, r))
                if key(cand) < key(m):
                    m, improved = cand, True
    return m


def _parallel_scalars(q: Quasilattice, y: Sequence):
    """Nonzero scalars ``l`` with ``l*y`` in ``Q``: a Z-basis in canonical form."""
    tower = _tower_for(q, y)
    y = _vec(y, tower)
    n = q.ambient_dim
    if all(c == 0 for c in y):
        raise QuasilatticeError("direction must be nonzero")
    # wedge(sum m_i Y_i, y) = 0, linear in m
    wedge_cols = []
    for g in q.generators:
        wedge_cols.append(tuple(g[a] * y[b] - g[b] * y[a]
                                for a in range(n) for b in range(a + 1, n)))
    if n > 1:
        rows = _clear(_expand(wedge_cols, tower))
        kernel = intlinalg.integer_kernel(rows, q.q)
    else:
        kernel = [[int(i == j) for j in range(q.q)] for i in range(q.q)]
    a0 = next(a for a in range(n) if y[a] != 0)
    scalars = []
    for m in kernel:
        v = q.combine(m)
        scalars.append(v[a0] / y[a0])
    return _scalar_basis(scalars, tower)


def _scalar_basis(scalars, tower: FieldTower):
    """Canonical Z-basis of the subgroup of the field spanned by ``scalars``.

    Pivots are taken on the highest radical coordinate first, and remaining
    entries are reduced into ``[0, pivot)``, so the output is unique.  The
    result is listed with rational generators first.
    """
    if not scalars:
        return []
    dim = tower.dimension
    coords = [list(reversed(coerce(s, tower).coeffs)) for s in scalars]
    den = 1
    for row in coords:
        for c in row:
            den = lcm(den, c.denominator)
    ints = [[int(c * den) for c in row] for row in coords]
    basis = intlinalg.lattice_basis(ints, dim)
    out = [tower.element(Fraction(c, den) for c in reversed(row)) for row in basis]
    out = [(-s if s < 0 else s) for s in out]
    return sorted(out, key=lambda s: (not s.is_rational(), tuple(reversed(s.coeffs))))


@dataclass(frozen=True)
class LineSubgroup:
    """``Q1 = {l : l*Y in Q}`` and the class of its image in the circle.

    ``kind`` is ``"trivial"``, ``"finite_cyclic"`` (with ``order``) or
    ``"dense"``.
    """

    direction: tuple
    generators: tuple
    witnesses: tuple
    kind: str
    order: int | None = None

    @property
    def is_dense(self) -> bool:
        return self.kind == "dense"

    def describe(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        if self.kind == "dense":
            return f"dense (Q1 = Z-span of {gens})"
        if self.kind == "trivial":
            return "trivial (Q1 = Z)"
        return f"finite cyclic of order {self.order} (Q1 = (1/{self.order})Z)"


def line_subgroup(q: Quasilattice, y: Sequence) -> LineSubgroup:
    tower = _tower_for(q, y)
    y = _vec(y, tower)
    if all(c == 0 for c in y):
        raise QuasilatticeError("direction must be nonzero")
    if q.contains(y) is None:
        raise QuasilatticeError("direction is not in the quasilattice")
    gens = _parallel_scalars(q, y)
    witnesses = tuple(q.contains(tuple(l * c for c in y)) for l in gens)
    if all(g.is_rational() for g in gens):
        # a subgroup of Q containing 1 is (1/k)Z
        g = Fraction(0)
        for s in gens:
            f = s.to_fraction()
            g = Fraction(gcd(g.numerator * f.denominator, f.numerator * g.denominator),
                         g.denominator * f.denominator)
        k = g.denominator
        assert g.numerator == 1
        kind = "trivial" if k == 1 else "finite_cyclic"
        return LineSubgroup(y, tuple(gens), witnesses, kind, k)
    return LineSubgroup(y, tuple(gens), witnesses, "dense", None)


def extend(qt: Quasilattice, y: Sequence) -> Quasilattice:
    """``Span_Z(Qt + {y})``."""
    tower = _tower_for(qt, y)
    y = _vec(y, tower)
    if all(c == 0 for c in y):
        raise QuasilatticeError("cannot extend by zero")
    return Quasilattice(list(qt.generators) + [y], tower)


def quotient(q: Quasilattice, qt: Quasilattice) -> GroupPresentation:
    """Present ``Q / Qt``; ``Qt`` must be contained in ``Q``."""
    witnesses = []
    for g in qt.generators:
        w = q.contains(g)
        if w is None:
            raise QuasilatticeError("the subgroup is not contained in the quasilattice")
        witnesses.append(w.coefficients)
    cols = [tuple(r) for r in q.relations] + [tuple(w) for w in witnesses]
    return _presentation(q.q, cols, len(cols))


def ray_scale(q: Quasilattice, x: Sequence):
    """Positive ``t`` of smallest height with ``t*x`` in ``Q``, or ``None``."""
    gens = _parallel_scalars(q, x)
    if not gens:
        return None

    def height(s: FieldElement):
        return max(max(abs(c.numerator), c.denominator) for c in s.coeffs if c) if s else 0

    return min(gens, key=height)
