"""The generalized Delzant construction as symbolic data.

From a simple pointed full-dimensional polyhedron with inward normals
``X_j`` in a quasilattice ``Q`` we build:

* the projection ``pi: R^d -> R^n``, ``e_j -> X_j``;
* the level system: one equation ``sum_j V_j (|z_j|^2 + lambda_j) = 0`` for
  each vector ``V`` of a basis of ``ker(pi)``, i.e. the zero set of the
  moment map of ``N = ker(T^d -> R^n/Q)``;
* the moment map of the quotient, determined by
  ``<Phi, X_j> = |z_j|^2 + lambda_j``;
* per-vertex charts ``(I_n, A)``, the generator matrix ``C = (I_n, A, P)``
  and the discrete isotropy groups.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .exactfield import FieldTower, coerce, common_tower
from .polyhedra import HPolyhedron, PolyhedronAnalysis, Vertex, analyze, pairing
from .quasilattice import (GroupPresentation, MembershipWitness, Quasilattice,
                           quotient)
from . import linalg

__all__ = [
    "DelzantError",
    "DelzantPresentation",
    "DelzantModel",
    "VertexChart",
    "IsotropySummary",
    "presentation",
    "build_model",
    "vertex_chart",
    "isotropy",
    "fixed_points",
    "level_system_matches",
    "find_variable_permutation",
    "kernel_group_matches",
]


class DelzantError(ValueError):
    pass


@dataclass(frozen=True)
class DelzantPresentation:
    """``(Delta, Q, {X_j})`` with a membership witness for every normal."""

    polyhedron: HPolyhedron
    quasilattice: Quasilattice
    witnesses: tuple
    analysis: PolyhedronAnalysis

    @property
    def tower(self) -> FieldTower:
        return common_tower(list(self.polyhedron.normals), list(self.quasilattice.generators))


def presentation(p: HPolyhedron, q: Quasilattice, witnesses: Sequence | None = None,
                 analysis: PolyhedronAnalysis | None = None) -> DelzantPresentation:
    """Validate ``p`` against the standing hypotheses and attach witnesses.

    Redundant inequalities are dropped (the irredundant form is used); given
    witnesses are matched by input index and must recombine exactly.  A
    precomputed ``analysis`` of ``p`` may be passed to skip re-analysis.
    """
    a = analysis if analysis is not None else analyze(p)
    if not a.pointed:
        raise DelzantError("polyhedron is not pointed")
    if not a.simple:
        raise DelzantError("polyhedron is not simple")
    if q.ambient_dim != p.ambient_dim:
        raise DelzantError("quasilattice and polyhedron live in different dimensions")
    ws = []
    for i, j in enumerate(a.kept):
        x = a.polyhedron.facets[i].normal
        if witnesses is not None and witnesses[j] is not None:
            w = witnesses[j]
            if not isinstance(w, MembershipWitness):
                w = MembershipWitness(tuple(int(c) for c in w))
            if len(w.coefficients) != q.q or q.combine(w.coefficients) != x:
                raise DelzantError(f"witness for facet {j + 1} does not recombine to its normal")
        else:
            w = q.contains(x)
            if w is None:
                raise DelzantError(f"normal of facet {j + 1} is not in the quasilattice")
        ws.append(w)
    return DelzantPresentation(a.polyhedron, q, tuple(ws), a)


@dataclass(frozen=True)
class VertexChart:
    """Chart data at a simple vertex.

    ``permutation`` lists facet indices with the ``n`` active ones first.
    In the basis of the active normals, ``pi`` has matrix ``(I_n, A)``;
    ``C = (I_n, A, P)`` expresses the generator list ``X_perm + Y_1..Y_q``.
    ``kernel_basis`` holds the vectors ``V_k`` (input coordinates) spanning
    ``ker(pi)``; ``alpha`` is the dual basis to the active normals.
    """

    vertex: Vertex
    permutation: tuple
    A: tuple
    C: tuple
    kernel_basis: tuple
    alpha: tuple

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def active(self) -> tuple:
        return self.permutation[: self.n]

    def group_element(self, m: Sequence[int], x: Sequence):
        """The point ``(C_j.m - A_j.x, x)`` of ``R^d`` (input coordinates) whose class lies in ``N``."""
        n = self.n
        d = len(self.permutation)
        zero = self.alpha[0][0] * 0
        permuted = [sum((ci * mi for ci, mi in zip(self.C[j], m)), zero)
                    - sum((a * xi for a, xi in zip(self.A[j], x)), zero) for j in range(n)]
        permuted += [coerce(xi, zero.tower) for xi in x]
        out = [zero] * d
        for pos, j in enumerate(self.permutation):
            out[j] = permuted[pos]
        return tuple(out)


@dataclass(frozen=True)
class DelzantModel:
    """Symbolic output of the construction.

    ``level_system`` is the reduced row echelon form of the ``(d-n) x (d+1)``
    matrix whose row ``[c_1..c_d | c]`` encodes ``sum_j c_j |z_j|^2 = c``.
    ``kernel`` is the raw basis ``V_k`` of ``ker(pi)`` taken from the base
    chart (lowest-index vertex).
    """

    presentation: DelzantPresentation
    d: int
    n: int
    pi: tuple
    lam: tuple
    kernel: tuple
    level_system: tuple
    base_chart: VertexChart
    is_compact: bool

    @property
    def model_dim(self) -> int:
        return 2 * self.n

    @property
    def quasilattice(self) -> Quasilattice:
        return self.presentation.quasilattice

    @property
    def polyhedron(self) -> HPolyhedron:
        return self.presentation.polyhedron

    @property
    def vertices(self) -> tuple:
        return self.presentation.analysis.vertices

    @property
    def normals(self):
        return self.polyhedron.normals

    def on_level_set(self, abs_sq: Sequence) -> bool:
        """Whether the values ``|z_j|^2`` satisfy every level equation."""
        return all(linalg.dot(row[:-1], abs_sq) == row[-1] for row in self.level_system)

    def moment_map(self, abs_sq: Sequence):
        """``Phi`` at a point of the level set, given ``|z_j|^2``."""
        if not self.on_level_set(abs_sq):
            raise DelzantError("point is not on the level set")
        chart = self.base_chart
        vals = [abs_sq[j] + self.lam[j] for j in chart.active]
        mu = tuple(sum((v * a[i] for v, a in zip(vals, chart.alpha)), self.lam[0] * 0)
                   for i in range(self.n))
        assert all(pairing(mu, x) == s + l for x, s, l in zip(self.normals, abs_sq, self.lam))
        return mu

    def vertex_abs_sq(self, v: Vertex):
        """``|z_j|^2 = <v, X_j> - lambda_j``: the values at the fixed point over ``v``."""
        return tuple(pairing(v.point, x) - l for x, l in zip(self.normals, self.lam))


def _chart(normals, lam, gens, v: Vertex, order: Sequence[int] | None = None) -> VertexChart:
    n = len(normals[0])
    d = len(normals)
    active = tuple(v.active_set)
    if len(active) != n:
        raise DelzantError("vertex is not simple")
    rest = tuple(order) if order is not None else tuple(j for j in range(d) if j not in active)
    if sorted(active + rest) != list(range(d)):
        raise DelzantError("order must list every non-active facet once")
    perm = active + rest
    basis_t = linalg.transpose([normals[j] for j in active])
    cols = []
    for x in [normals[j] for j in perm] + list(gens):
        c = linalg.solve(basis_t, x)
        if c is None:
            raise DelzantError("active normals do not form a basis")
        cols.append(c)
    C = tuple(tuple(col[j] for col in cols) for j in range(n))
    A = tuple(row[n:d] for row in C)
    zero = lam[0] * 0
    one = zero + 1
    kernel = []
    for k in range(d - n):
        permuted = [A[j][k] for j in range(n)] + [zero] * (d - n)
        permuted[n + k] = -one
        vec = [zero] * d
        for pos, j in enumerate(perm):
            vec[j] = permuted[pos]
        kernel.append(tuple(vec))
    alpha = tuple(linalg.inverse([list(r) for r in basis_t]))
    return VertexChart(v, perm, A, C, tuple(kernel), tuple(tuple(r) for r in alpha))


def build_model(p: DelzantPresentation) -> DelzantModel:
    poly = p.polyhedron
    tower = p.tower
    normals = [tuple(coerce(c, tower) for c in x) for x in poly.normals]
    lam = tuple(coerce(l, tower) for l in poly.offsets)
    n, d = poly.ambient_dim, len(normals)
    pi = tuple(tuple(x[i] for x in normals) for i in range(n))
    if linalg.rank(pi) != n:
        raise DelzantError("projection is not surjective")
    base = _chart(normals, lam, p.quasilattice.generators, p.analysis.vertices[0])
    rows = [tuple(V) + (-linalg.dot(V, lam),) for V in base.kernel_basis]
    level, _ = linalg.rref(rows) if rows else ([], [])
    return DelzantModel(p, d, n, pi, lam, base.kernel_basis, tuple(level), base,
                        p.analysis.is_polytope)


def vertex_chart(m: DelzantModel, v: Vertex | int, order: Sequence[int] | None = None) -> VertexChart:
    """Chart at ``v``; ``order`` optionally fixes the sequence of non-active facets."""
    if isinstance(v, int):
        v = m.vertices[v]
    return _chart(m.normals, m.lam, m.quasilattice.generators, v, order)


@dataclass(frozen=True)
class IsotropySummary:
    groups: tuple
    smooth: bool


def chart_group(m: DelzantModel, v: Vertex) -> GroupPresentation:
    """``{x : sum x_j X_j in Q} / Z^n`` over the active normals, i.e. ``Q / Span_Z(active)``."""
    basis = Quasilattice([m.normals[j] for j in v.active_set], m.quasilattice.tower)
    return quotient(m.quasilattice, basis)


def isotropy(m: DelzantModel) -> IsotropySummary:
    groups = tuple(chart_group(m, v) for v in m.vertices)
    return IsotropySummary(groups, all(g.is_trivial for g in groups))


def fixed_points(m: DelzantModel):
    """One fixed point per vertex, as ``(vertex, chart)`` pairs."""
    return [(v, vertex_chart(m, v)) for v in m.vertices]


# ---------------------------------------------------------------------------
# comparison helpers

def _permute_row(row, perm):
    """Row over variables ``z``; ``perm[i]`` is the model variable playing target variable ``i``."""
    return tuple(row[j] for j in perm) + (row[-1],)


def level_system_matches(m: DelzantModel, rows: Sequence[Sequence], perm: Sequence[int] | None = None) -> bool:
    """Row-space equality of the model's level system with ``rows``.

    ``rows`` are written in target variables; target variable ``i`` is the
    model's variable ``perm[i]``.
    """
    perm = tuple(perm) if perm is not None else tuple(range(m.d))
    if len(rows) != len(m.level_system):
        return False
    tower = common_tower(list(m.level_system), [list(r) for r in rows])
    ours = [tuple(coerce(c, tower) for c in _permute_row(r, perm)) for r in m.level_system]
    theirs = [tuple(coerce(c, tower) for c in r) for r in rows]
    if not ours:
        return True
    return linalg.same_row_space(ours, theirs)


def find_variable_permutation(m: DelzantModel, rows: Sequence[Sequence]):
    """Lexicographically first permutation under which the level systems agree."""
    for perm in permutations(range(m.d)):
        if level_system_matches(m, rows, perm):
            return perm
    return None


def kernel_group_matches(m: DelzantModel, lie: Sequence[Sequence], discrete: Sequence[Sequence] = (),
                         perm: Sequence[int] | None = None) -> bool:
    """Whether ``exp(span_R(lie) + Z^d + Z discrete)`` is exactly the group ``N``.

    Vectors are in target coordinates (see :func:`level_system_matches`).
    The Lie part must be a basis of ``ker(pi)``; the discrete part together
    with the coordinate vectors must map onto ``Q`` under ``pi``.
    """
    perm = tuple(perm) if perm is not None else tuple(range(m.d))
    tower = common_tower(list(m.pi), [list(v) for v in lie], [list(v) for v in discrete])

    def to_model(vec):
        out = [tower.zero] * m.d
        for i, j in enumerate(perm):
            out[j] = coerce(vec[i], tower)
        return tuple(out)

    lie = [to_model(v) for v in lie]
    if len(lie) != m.d - m.n or (lie and linalg.rank(lie) != len(lie)):
        return False
    if any(linalg.matvec(m.pi, v) != (tower.zero,) * m.n for v in lie):
        return False
    images = [tuple(m.pi[i][j] for i in range(m.n)) for j in range(m.d)]
    images += [linalg.matvec(m.pi, to_model(v)) for v in discrete]
    q = m.quasilattice
    if any(q.contains(x) is None for x in images):
        return False
    sub = Quasilattice(images, tower)
    return all(sub.contains(g) is not None for g in q.generators)
