"""Blow-ups at fixed points as special cuts.

Blowing up the fixed point over a vertex ``nu`` by an ``eps``-amount is
the cut along ``H(Y, <nu, Y> + eps)`` for a direction ``Y`` in the interior
of the dual of the vertex cone, with ``eps`` small enough that the piece
cut off is combinatorially a simplex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactfield import FieldElement, coerce, common_tower
from .polyhedra import HPolyhedron, PolyhedronError, Vertex, combinatorial_type, halfspace_cut, pairing
from .quasilattice import GroupPresentation, LineSubgroup, MembershipWitness
from .delzant import DelzantModel, DelzantPresentation, build_model, chart_group, vertex_chart
from .cutting import CutResult, CutSpec, cut, _as_model

__all__ = [
    "BlowupError",
    "BlowupSpec",
    "Admissibility",
    "ThresholdCheck",
    "Threshold",
    "BlowupResult",
    "LambdaCorrespondence",
    "LocalModel",
    "admissible",
    "max_epsilon",
    "blow_up",
    "local_model",
]


class BlowupError(ValueError):
    def __init__(self, message: str, violations: tuple = ()):
        super().__init__(message)
        self.violations = violations


@dataclass(frozen=True)
class BlowupSpec:
    """Blow up the fixed point over ``vertex`` along ``direction`` at level ``epsilon``.

    ``vertex`` is a vertex index or a point.  ``epsilon`` is the absolute
    level of the cutting hyperplane, so it must exceed ``<vertex, Y>``.
    """

    vertex: object
    direction: tuple
    epsilon: FieldElement


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    witness: MembershipWitness | None
    pairings: tuple
    reasons: tuple

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ThresholdCheck:
    """A simplex-type test of the minus side at ``level``."""

    level: FieldElement
    simplex_type: bool
    role: str


@dataclass(frozen=True)
class Threshold:
    """Supremum ``eps*`` of levels with a simplex-type minus side.

    ``value`` is ``None`` when there is no bound.  ``critical_levels`` are
    the values ``<w, Y>`` over the other vertices; ``checks`` certify the
    answer.
    """

    vertex: Vertex
    base_level: FieldElement
    value: FieldElement | None
    critical_levels: tuple
    checks: tuple

    @property
    def infinite(self) -> bool:
        return self.value is None

    def allows(self, eps) -> bool:
        return eps > self.base_level and (self.value is None or eps < self.value or (
            eps == self.value and any(c.level == eps and c.simplex_type for c in self.checks)))


@dataclass(frozen=True)
class BlowupResult:
    """The cut, with the plus side as the blow-up and the minus side as the exceptional simplex."""

    spec: BlowupSpec
    vertex: Vertex
    threshold: Threshold
    cut: CutResult

    @property
    def blown_up(self):
        return self.cut.plus

    @property
    def exceptional(self):
        return self.cut.minus

    @property
    def reduced(self):
        return self.cut.reduced


def _vertex(m: DelzantModel, v) -> Vertex:
    if isinstance(v, Vertex):
        return m.vertices[m.presentation.analysis.vertex_index(v.point)]
    if isinstance(v, int):
        return m.vertices[v]
    return m.vertices[m.presentation.analysis.vertex_index(
        tuple(coerce(c, m.polyhedron.tower) for c in v))]


def _vec(y, m: DelzantModel):
    tower = common_tower(list(m.normals), list(y))
    return tuple(coerce(c, tower) for c in y)


def admissible(m, v, y: Sequence) -> Admissibility:
    """``Y`` in ``Q`` with ``<alpha_j, Y> > 0`` for the dual basis at ``v``."""
    m = _as_model(m)
    v = _vertex(m, v)
    y = _vec(y, m)
    chart = vertex_chart(m, v)
    pairings = tuple(pairing(a, y) for a in chart.alpha)
    reasons = []
    w = m.quasilattice.contains(y)
    if w is None:
        reasons.append("direction is not in the quasilattice")
    for j, p in zip(chart.active, pairings):
        if p <= 0:
            reasons.append(f"pairing with the dual of facet {j + 1} is {p}, not positive")
    return Admissibility(not reasons, w, pairings, tuple(reasons))


def _simplex_below(p: HPolyhedron, y, level) -> bool:
    try:
        hc = halfspace_cut(p, y, level, "<=")
    except PolyhedronError:
        return False
    return hc.analysis.pointed and combinatorial_type(hc.analysis).simplex_type


def max_epsilon(m, v, y: Sequence) -> Threshold:
    """Supremum of the levels at which the piece cut off at ``v`` is a simplex.

    The type can only change at the levels ``<w, Y>`` of other vertices, so
    it is tested at each such level and at midpoints between consecutive
    ones (and one unit beyond the last).
    """
    m = _as_model(m)
    v = _vertex(m, v)
    y = _vec(y, m)
    adm = admissible(m, v, y)
    if not adm.ok:
        raise BlowupError("direction is not admissible: " + "; ".join(adm.reasons))
    p = m.polyhedron
    base = pairing(v.point, y)
    levels = sorted({pairing(w.point, y) for w in m.vertices if w != v})
    assert all(c > base for c in levels)
    checks = []

    def test(level, role):
        ok = _simplex_below(p, y, level)
        checks.append(ThresholdCheck(level, ok, role))
        return ok

    first = (base + levels[0]) / 2 if levels else base + 1
    if not test(first, "below first critical level" if levels else "probe, no other vertex"):
        return Threshold(v, base, base, tuple(levels), tuple(checks))
    for i, c in enumerate(levels):
        at_ok = test(c, "at critical level")
        after = (c + levels[i + 1]) / 2 if i + 1 < len(levels) else c + 1
        after_ok = test(after, "above critical level")
        if not (at_ok and after_ok):
            return Threshold(v, base, c, tuple(levels), tuple(checks))
    return Threshold(v, base, None, tuple(levels), tuple(checks))


def blow_up(m, spec: BlowupSpec) -> BlowupResult:
    """Validate the blow-up data and perform the cut."""
    m = _as_model(m)
    v = _vertex(m, spec.vertex)
    y = _vec(spec.direction, m)
    threshold = max_epsilon(m, v, y)
    eps = coerce(spec.epsilon, common_tower(list(y), spec.epsilon))
    if eps <= threshold.base_level:
        raise BlowupError(f"level {eps} must exceed <vertex, Y> = {threshold.base_level}")
    if not _simplex_below(m.polyhedron, y, eps):
        violations = tuple(w for w in m.vertices if w != v and pairing(w.point, y) < eps)
        raise BlowupError(
            f"level {eps} is beyond the threshold {threshold.value}: the cut-off piece is not a simplex",
            violations)
    return BlowupResult(spec, v, threshold, cut(m, CutSpec(y, eps)))


@dataclass(frozen=True)
class LambdaCorrespondence:
    """For a scalar generator ``tau`` of ``Q1``: ``x = tau * <alpha, Y>`` and the witness of ``sum x_j X_j``."""

    tau: FieldElement
    x: tuple
    witness: MembershipWitness | None
    holds: bool


@dataclass(frozen=True)
class LocalModel:
    """Cone model at the apex, cut along ``H(Y, eps)``.

    ``exponents_plus`` / ``exponents_minus`` are the weights of the circle
    in ``N_eps+-``: ``<alpha_j, Y>`` on ``u_1..u_n`` and ``-1`` / ``+1`` on
    ``u_{n+1}``; the full group is that circle times ``Gamma``.
    """

    cone: HPolyhedron
    model: DelzantModel
    gamma: GroupPresentation
    alpha: tuple
    pairings: tuple
    line: LineSubgroup
    cut: CutResult
    exponents_plus: tuple
    exponents_minus: tuple
    correspondence: tuple

    @property
    def correspondence_holds(self) -> bool:
        return all(c.holds for c in self.correspondence)

    def expected_level_rows(self, sign: int):
        """``sum <alpha_j, Y>|u_j|^2 -+ |u_{n+1}|^2 = eps`` as a row."""
        return [tuple(self.pairings) + (-sign, self.cut.spec.level)]


def local_model(cone: DelzantPresentation, y: Sequence, eps) -> LocalModel:
    """The blow-up local model at the apex of a simple cone."""
    m = build_model(cone)
    if len(m.polyhedron.facets) != m.n or any(o != 0 for o in m.polyhedron.offsets):
        raise BlowupError("expected a simplicial cone with apex at the origin")
    apex = m.vertices[0]
    y = _vec(y, m)
    adm = admissible(m, apex, y)
    if not adm.ok:
        raise BlowupError("direction is not admissible: " + "; ".join(adm.reasons))
    chart = vertex_chart(m, apex)
    gamma = chart_group(m, apex)
    result = cut(m, CutSpec(y, eps))
    line = result.circle.line
    corr = []
    for tau in line.generators:
        x = tuple(tau * p for p in adm.pairings)
        target = tuple(sum((xj * m.normals[j][i] for j, xj in zip(chart.active, x)), tau * 0)
                       for i in range(m.n))
        w = m.quasilattice.contains(target)
        corr.append(LambdaCorrespondence(tau, x, w, w is not None and target == tuple(tau * c for c in y)))
    plus = tuple(adm.pairings) + (-1,)
    minus = tuple(adm.pairings) + (1,)
    return LocalModel(cone.polyhedron, m, gamma, chart.alpha, adm.pairings, line, result,
                      plus, minus, tuple(corr))
