"""Cutting a toric quasifold along a hyperplane ``H(Y, eps)``.

Both halves of the polyhedron are rebuilt as Delzant presentations over the
same quasilattice: the surviving original normals plus ``Y`` (plus side) or
``-Y`` (minus side).  Alongside the two models we record the circle data of
the cut: the scalar group ``Q1 = {l : lY in Q}`` and its image in the
circle, the coefficients ``b`` of ``Y`` in a vertex basis, the block matrix
``A+ = (A^l, b)`` and the moment maps ``nu_-+ = Phi_Y -+ |w|^2``.

Cuts in directions outside the quasilattice go through
:func:`arbitrary_cut`, which first enlarges the quasilattice by ``Y``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .exactfield import FieldElement, coerce, common_tower
from .polyhedra import (EmptyPolyhedronError, HalfspaceCut, HPolyhedron,
                        LowDimensionalError, Vertex, analyze,
                        halfspace_cut, pairing)
from .quasilattice import (GroupPresentation, LineSubgroup, MembershipWitness,
                           Quasilattice, extend, line_subgroup, quotient)
from .delzant import (DelzantModel, DelzantPresentation, VertexChart, build_model,
                      presentation, vertex_chart)
from . import linalg

__all__ = [
    "CutSpec",
    "SideCheck",
    "CutValidation",
    "NuFormula",
    "CircleActionData",
    "CutSide",
    "CutGroupData",
    "ReducedSpaceInfo",
    "CutResult",
    "ArbitraryCutResult",
    "CutError",
    "DirectionNotInQuasilattice",
    "validate_cut",
    "cut",
    "arbitrary_cut",
    "reduced_space_info",
]


class CutError(ValueError):
    def __init__(self, message: str, validation: "CutValidation | None" = None):
        super().__init__(message)
        self.validation = validation


class DirectionNotInQuasilattice(CutError):
    """Raised by :func:`cut`; use :func:`arbitrary_cut` for such directions."""


@dataclass(frozen=True)
class CutSpec:
    """The hyperplane ``H(Y, eps) = {mu : <mu, Y> = eps}``."""

    direction: tuple
    level: FieldElement

    def __post_init__(self):
        tower = common_tower(list(self.direction), self.level)
        y = tuple(coerce(c, tower) for c in self.direction)
        if all(c == 0 for c in y):
            raise ValueError("cut direction must be nonzero")
        object.__setattr__(self, "direction", y)
        object.__setattr__(self, "level", coerce(self.level, tower))

    def flipped(self) -> "CutSpec":
        return CutSpec(tuple(-c for c in self.direction), -self.level)


@dataclass(frozen=True)
class SideCheck:
    ok: bool
    reasons: tuple
    halfspace: HalfspaceCut | None


@dataclass(frozen=True)
class CutValidation:
    plus: SideCheck
    minus: SideCheck
    vertices_on_hyperplane: tuple

    @property
    def ok(self) -> bool:
        return self.plus.ok and self.minus.ok

    def reasons(self):
        return [f"plus side: {r}" for r in self.plus.reasons] + [
            f"minus side: {r}" for r in self.minus.reasons]


def _side_check(p: HPolyhedron, spec: CutSpec, side: str) -> SideCheck:
    try:
        hc = halfspace_cut(p, spec.direction, spec.level, side)
    except EmptyPolyhedronError:
        return SideCheck(False, ("empty",), None)
    except LowDimensionalError as e:
        return SideCheck(False, (f"dimension {e.dimension} < {e.ambient}",), None)
    reasons = []
    if not hc.analysis.pointed:
        reasons.append("not pointed")
    if not hc.analysis.simple:
        bad = [str(v) for v in hc.analysis.vertices if len(v.active_set) != p.ambient_dim]
        reasons.append("not simple at " + ", ".join(bad))
    if hc.new_facet is None:
        reasons.append("the hyperplane does not cut the polyhedron")
    return SideCheck(not reasons, tuple(reasons), hc)


def validate_cut(p: HPolyhedron, spec: CutSpec, analysis=None) -> CutValidation:
    """Check that both halves are full-dimensional, simple and pointed."""
    a = analysis if analysis is not None else analyze(p)
    on_h = tuple(v for v in a.vertices if pairing(v.point, spec.direction) == spec.level)
    return CutValidation(_side_check(a.polyhedron, spec, ">="),
                         _side_check(a.polyhedron, spec, "<="), on_h)


@dataclass(frozen=True)
class NuFormula:
    """``nu = sum_j z_coefficients[j] |z_j|^2 + w_coefficient |w|^2 + constant``."""

    z_coefficients: tuple
    w_coefficient: int
    constant: FieldElement

    def __call__(self, abs_sq: Sequence, w_sq) -> FieldElement:
        return linalg.dot(self.z_coefficients, abs_sq) + self.w_coefficient * w_sq + self.constant


@dataclass(frozen=True)
class CircleActionData:
    """Circle subgroup generated by ``Y`` and its action data.

    ``b`` are the coordinates of ``Y`` in the active normals at the chart
    vertex (``chart_facets``, input indices).  ``exponents`` has one entry
    per facet of the original polyhedron: ``exp(tY)`` multiplies ``z_j`` by
    ``exp(2 pi i t exponents[j])``.
    """

    line: LineSubgroup
    chart_vertex: Vertex
    chart_facets: tuple
    b: tuple
    exponents: tuple
    nu_minus: NuFormula
    nu_plus: NuFormula


@dataclass(frozen=True)
class CutGroupData:
    """Integer data of the cut group: ``exp{(C_j.m - A+_j.x, x)}``.

    ``C`` expresses the generator list (original normals in chart order,
    then the quasilattice generators) in the chart basis; ``a_plus`` is the
    ``(A^l, b)`` block.
    """

    C: tuple
    a_plus: tuple


@dataclass(frozen=True)
class CutSide:
    """One half of a cut.  ``sign`` is +1 for ``<mu, Y> >= eps``."""

    sign: int
    halfspace: HalfspaceCut
    presentation: DelzantPresentation
    model: DelzantModel
    chart_vertex: Vertex | None
    chart: VertexChart | None
    b: tuple | None
    a_block: tuple | None
    a_block_consistent: bool | None

    @property
    def polyhedron(self) -> HPolyhedron:
        return self.presentation.polyhedron

    @property
    def surviving(self) -> tuple:
        return self.halfspace.surviving

    @property
    def l(self) -> int:
        return len(self.halfspace.surviving)


@dataclass(frozen=True)
class ReducedSpaceInfo:
    """The piece ``Delta cap H(Y, eps)`` shared by both cut spaces."""

    vertices: tuple
    rays: tuple
    dimension: int
    fixed_points: tuple

    @property
    def fixed_point_count(self) -> int:
        return len(self.fixed_points)


@dataclass(frozen=True)
class CutResult:
    spec: CutSpec
    validation: CutValidation
    plus: CutSide
    minus: CutSide
    circle: CircleActionData
    group_data: CutGroupData | None
    reduced: ReducedSpaceInfo
    notes: tuple

    @property
    def plus_model(self) -> DelzantModel:
        return self.plus.model

    @property
    def minus_model(self) -> DelzantModel:
        return self.minus.model

    @property
    def plus_polyhedron(self) -> HPolyhedron:
        return self.plus.polyhedron

    @property
    def minus_polyhedron(self) -> HPolyhedron:
        return self.minus.polyhedron

    @property
    def a_plus(self):
        return self.plus.a_block

    @property
    def reduced_space_fixed_points(self) -> tuple:
        return self.validation.vertices_on_hyperplane


def _chart_vertex(base: DelzantModel, hc: HalfspaceCut, y, eps):
    """Lowest-index vertex of the cut polyhedron off the hyperplane.

    Such a vertex is a vertex of the original polyhedron.  When every vertex
    of the half lies on the hyperplane (e.g. the unbounded side of a cone),
    fall back to the lowest-index original vertex whose active facets all
    survive the cut.  Returns ``(vertex_of_original, vertex_of_cut | None)``.
    """
    for v in hc.analysis.vertices:
        if pairing(v.point, y) != eps:
            return base.vertices[base.presentation.analysis.vertex_index(v.point)], v
    for v in base.vertices:
        if all(j in hc.surviving for j in v.active_set):
            return v, None
    return None, None


def _build_side(base: DelzantModel, wy: MembershipWitness, spec: CutSpec, sign: int,
                check: SideCheck) -> CutSide:
    hc = check.halfspace
    y = spec.direction if sign > 0 else tuple(-c for c in spec.direction)
    pres = base.presentation
    ws = [pres.witnesses[j] for j in hc.surviving] + [wy if sign > 0 else -wy]
    own = replace(hc.analysis, polyhedron=hc.polyhedron, kept=tuple(range(len(hc.polyhedron.facets))),
                  redundant=())
    new_pres = presentation(hc.polyhedron, pres.quasilattice, ws, own)
    model = build_model(new_pres)

    v, v_cut = _chart_vertex(base, hc, spec.direction, spec.level)
    if v is None:
        return CutSide(sign, hc, new_pres, model, None, None, None, None, None)
    d = base.d
    active = tuple(v.active_set)
    surv_rest = tuple(j for j in hc.surviving if j not in active)
    dropped = tuple(j for j in range(d) if j not in hc.surviving)
    chart = vertex_chart(base, v, surv_rest + dropped)
    basis_t = linalg.transpose([base.normals[j] for j in active])
    b = linalg.solve(basis_t, y)
    k = len(surv_rest)
    a_block = tuple(tuple(chart.A[i][:k]) + (b[i],) for i in range(base.n))
    consistent = None
    if v_cut is not None:
        index = {j: i for i, j in enumerate(hc.surviving)}
        cut_rest = tuple(index[j] for j in surv_rest) + (hc.new_facet,)
        cut_chart = vertex_chart(model, model.vertices[model.presentation.analysis.vertex_index(v.point)],
                                 cut_rest)
        consistent = cut_chart.A == a_block
    return CutSide(sign, hc, new_pres, model, v, chart, tuple(b), a_block, consistent)


def reduced_space_info(result: "CutResult | CutValidation") -> ReducedSpaceInfo:
    """Vertices and rays of ``Delta cap H`` and the fixed points it contains."""
    validation = result.validation if isinstance(result, CutResult) else result
    hc = validation.plus.halfspace
    if hc is None or hc.new_facet is None:
        return ReducedSpaceInfo((), (), -1, validation.vertices_on_hyperplane)
    y = hc.polyhedron.facets[hc.new_facet].normal
    verts = tuple(v.point for v in hc.analysis.vertices if hc.new_facet in v.active_set)
    rays = tuple(r for r in hc.analysis.recession_generators if pairing(r, y) == 0)
    if verts:
        vecs = [tuple(a - b for a, b in zip(p, verts[0])) for p in verts[1:]] + list(rays)
        dim = linalg.rank(vecs) if vecs else 0
    else:
        dim = -1
    return ReducedSpaceInfo(verts, rays, dim, validation.vertices_on_hyperplane)


def _as_model(m) -> DelzantModel:
    if isinstance(m, DelzantModel):
        return m
    if isinstance(m, DelzantPresentation):
        return build_model(m)
    raise TypeError("expected a DelzantModel or DelzantPresentation")


def cut(m, spec: CutSpec) -> CutResult:
    """Cut the model of ``m`` (model or presentation) along ``H(Y, eps)``."""
    base = _as_model(m)
    validation = validate_cut(base.polyhedron, spec, base.presentation.analysis)
    if not validation.ok:
        raise CutError("cut fails validation: " + "; ".join(validation.reasons()), validation)
    q = base.quasilattice
    wy = q.contains(spec.direction)
    if wy is None:
        raise DirectionNotInQuasilattice(
            "cut direction is not in the quasilattice; use arbitrary_cut", validation)
    plus = _build_side(base, wy, spec, 1, validation.plus)
    minus = _build_side(base, wy, spec, -1, validation.minus)

    line = line_subgroup(q, spec.direction)
    side = plus if plus.chart_vertex is not None else minus
    if side.chart_vertex is None:
        raise CutError("no vertex chart available for the circle action")
    b = side.b if side.sign > 0 else tuple(-c for c in side.b)
    active = side.chart.active
    zero = spec.level * 0
    exps = [zero] * base.d
    for j, bj in zip(active, b):
        exps[j] = bj
    assert tuple(sum((bj * base.normals[j][i] for j, bj in zip(active, b)), zero)
                 for i in range(base.n)) == spec.direction
    const = sum((bj * base.lam[j] for j, bj in zip(active, b)), zero)
    circle = CircleActionData(line, side.chart_vertex, active, b, tuple(exps),
                              NuFormula(tuple(exps), -1, const), NuFormula(tuple(exps), 1, const))
    group = CutGroupData(plus.chart.C, plus.a_block) if plus.chart is not None else None
    notes = (
        "The cut spaces are identified with the models of the two halves through "
        "their presentation data (normals, offsets, quasilattice); no symplectomorphism "
        "is constructed.",
    )
    return CutResult(spec, validation, plus, minus, circle, group,
                     reduced_space_info(validation), notes)


@dataclass(frozen=True)
class ArbitraryCutResult:
    base_quasilattice: Quasilattice
    quasilattice: Quasilattice
    gamma: GroupPresentation
    extended: bool
    cut: CutResult
    notes: tuple


def arbitrary_cut(p: DelzantPresentation, spec: CutSpec) -> ArbitraryCutResult:
    """Cut along any direction by first passing to ``Q = Span_Z(Qt + {Y})``.

    When ``Y`` is already in ``Qt`` the quasilattice is left as it is, so the
    result coincides with :func:`cut`.
    """
    validation = validate_cut(p.polyhedron, spec)
    if not validation.ok:
        raise CutError("cut fails validation: " + "; ".join(validation.reasons()), validation)
    qt = p.quasilattice
    extended = qt.contains(spec.direction) is None
    q = extend(qt, spec.direction) if extended else qt
    gamma = quotient(q, qt)
    pres = presentation(p.polyhedron, q) if extended else p
    result = cut(pres, spec)
    notes = (
        f"Q = Span_Z(Q~ + Y); Gamma = Q/Q~ is {gamma}.",
        "The model over Q is the quotient of the model over Q~ by Gamma, "
        "compatibly with the moment maps.",
        "The open pieces {Phi_Y > eps}/Gamma and {Phi_Y < eps}/Gamma of the model over Q~ "
        "embed as open dense subsets of the plus and minus cut spaces.",
        "Each cut space minus that open piece is the reduced space Phi_Y^-1(eps)/D^1.",
    )
    return ArbitraryCutResult(qt, q, gamma, extended, result, notes + result.notes)
