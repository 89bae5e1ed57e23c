"""Exact H-polyhedra ``{mu : <mu, X_j> >= lambda_j}``.

Vertices come from solving every n-subset of facet equations and keeping
the feasible solutions; extreme rays of the recession cone come from the
(n-1)-subsets.  Facet sizes here are tiny, so exhaustive enumeration is the
simplest exact method.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .exactfield import FieldElement, FieldTower, common_tower, coerce
from . import linalg

__all__ = [
    "Facet",
    "HPolyhedron",
    "Vertex",
    "PolyhedronAnalysis",
    "CombinatorialType",
    "HalfspaceCut",
    "PolyhedronError",
    "EmptyPolyhedronError",
    "LowDimensionalError",
    "analyze",
    "halfspace_cut",
    "combinatorial_type",
    "vertex_cone",
    "pairing",
]


class PolyhedronError(ValueError):
    pass


class EmptyPolyhedronError(PolyhedronError):
    pass


class LowDimensionalError(PolyhedronError):
    def __init__(self, dimension: int, ambient: int):
        super().__init__(f"polyhedron has dimension {dimension} < {ambient}")
        self.dimension = dimension
        self.ambient = ambient


def pairing(mu: Sequence, x: Sequence):
    """``<mu, x>`` for a covector ``mu`` and a vector ``x``."""
    return linalg.dot(mu, x)


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: FieldElement


@dataclass(frozen=True)
class HPolyhedron:
    ambient_dim: int
    facets: tuple

    @classmethod
    def from_inequalities(cls, normals, offsets, tower: FieldTower | None = None) -> "HPolyhedron":
        normals = [tuple(x) for x in normals]
        offsets = list(offsets)
        if not normals:
            raise PolyhedronError("at least one facet is required")
        if len(normals) != len(offsets):
            raise PolyhedronError("one offset per normal")
        n = len(normals[0])
        if n < 1 or any(len(x) != n for x in normals):
            raise PolyhedronError("normals have inconsistent dimensions")
        tower = tower or common_tower(normals, offsets)
        facets = []
        for x, lam in zip(normals, offsets):
            x = tuple(coerce(c, tower) for c in x)
            if all(c == 0 for c in x):
                raise PolyhedronError("zero normal")
            facets.append(Facet(x, coerce(lam, tower)))
        return cls(n, tuple(facets))

    @property
    def normals(self):
        return [f.normal for f in self.facets]

    @property
    def offsets(self):
        return [f.offset for f in self.facets]

    @property
    def tower(self) -> FieldTower:
        return self.facets[0].offset.tower

    def contains(self, mu: Sequence) -> bool:
        return all(pairing(mu, f.normal) >= f.offset for f in self.facets)

    def __len__(self):
        return len(self.facets)


@dataclass(frozen=True)
class Vertex:
    point: tuple
    active_set: tuple

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.point) + ")"


@dataclass(frozen=True)
class PolyhedronAnalysis:
    """Result of :func:`analyze`.

    ``polyhedron`` is the irredundant form; ``kept[i]`` is the input index of
    its i-th facet and ``redundant`` lists dropped input indices.  Active
    sets index into the irredundant facet list.
    """

    polyhedron: HPolyhedron
    kept: tuple
    redundant: tuple
    dimension: int
    pointed: bool
    simple: bool
    is_polytope: bool
    vertices: tuple
    recession_generators: tuple

    def vertex_index(self, point: Sequence) -> int:
        point = tuple(point)
        for i, v in enumerate(self.vertices):
            if v.point == point:
                return i
        raise KeyError(f"{point} is not a vertex")


@dataclass(frozen=True)
class CombinatorialType:
    vertex_facet_incidence: tuple
    simplex_type: bool


@dataclass(frozen=True)
class HalfspaceCut:
    """A polyhedron intersected with one more half-space.

    ``surviving`` are the original facet indices that still define facets,
    in order; ``new_facet`` is the index of the added facet in the result, or
    ``None`` when the new half-space was redundant.
    """

    polyhedron: HPolyhedron
    analysis: PolyhedronAnalysis
    surviving: tuple
    dropped: tuple
    new_facet: int | None


def _normalize_ray(r):
    lead = next(c for c in r if c != 0)
    if lead < 0:
        lead = -lead
    return tuple(c / lead for c in r)


def _pointed_data(normals, offsets, n):
    """Vertices (point, tight set) and extreme rays of a pointed polyhedron."""
    d = len(normals)
    seen = {}
    for subset in combinations(range(d), n):
        red, piv = linalg.rref([tuple(normals[j]) + (offsets[j],) for j in subset])
        if piv != list(range(n)):
            continue
        mu = tuple(row[n] for row in red)
        if mu in seen:
            continue
        if all(pairing(mu, normals[j]) >= offsets[j] for j in range(d)):
            seen[mu] = None
    vertices = []
    for mu in seen:
        tight = tuple(j for j in range(d) if pairing(mu, normals[j]) == offsets[j])
        vertices.append((mu, tight))
    vertices.sort(key=lambda v: v[1])

    rays = {}
    for subset in combinations(range(d), n - 1):
        ker = linalg.nullspace([normals[j] for j in subset], n) if subset else _identity(normals, n)
        if subset and len(ker) != 1:
            continue
        for r in ker:
            for s in (1, -1):
                rr = tuple(s * c for c in r)
                if all(pairing(rr, x) >= 0 for x in normals):
                    rays.setdefault(_normalize_ray(rr), None)
    return vertices, sorted(rays)


def _identity(normals, n):
    zero = normals[0][0] * 0
    return [tuple(zero + int(i == j) for j in range(n)) for i in range(n)]


def _affine_dim(points, rays):
    vecs = [tuple(a - b for a, b in zip(p, points[0])) for p in points[1:]] + list(rays)
    return linalg.rank(vecs) if vecs else 0


def _dimension_nonpointed(normals, offsets, n):
    """Dimension of a non-pointed polyhedron, via the quotient by its lineality space."""
    basis = []
    for j, x in enumerate(normals):
        if linalg.rank([normals[i] for i in basis] + [x]) > len(basis):
            basis.append(j)
    r = len(basis)
    bt = linalg.transpose([normals[i] for i in basis])
    coords = [linalg.solve(bt, x) for x in normals]
    verts, rays = _pointed_data(coords, offsets, r)
    if not verts:
        raise EmptyPolyhedronError("polyhedron is empty")
    return _affine_dim([v[0] for v in verts], rays) + (n - r)


def analyze(p: HPolyhedron) -> PolyhedronAnalysis:
    """Vertices, recession rays, flags and the irredundant form of ``p``.

    Raises :class:`EmptyPolyhedronError` for an empty polyhedron and
    :class:`LowDimensionalError` when the dimension is below ``n``.
    """
    n = p.ambient_dim
    if n < 1 or not p.facets:
        raise PolyhedronError("need n >= 1 and at least one facet")
    normals, offsets = p.normals, p.offsets
    if linalg.rank(normals) < n:
        dim = _dimension_nonpointed(normals, offsets, n)
        if dim < n:
            raise LowDimensionalError(dim, n)
        return PolyhedronAnalysis(p, tuple(range(len(normals))), (), dim, False, False,
                                  False, (), ())
    verts, rays = _pointed_data(normals, offsets, n)
    if not verts:
        raise EmptyPolyhedronError("polyhedron is empty")
    points = [v[0] for v in verts]
    dim = _affine_dim(points, rays)
    if dim < n:
        raise LowDimensionalError(dim, n)

    kept, faces = [], []
    for j, x in enumerate(normals):
        fverts = [v[0] for v in verts if j in v[1]]
        if not fverts:
            continue
        frays = [r for r in rays if pairing(r, x) == 0]
        if _affine_dim(fverts, frays) != n - 1:
            continue
        key = (frozenset(fverts), frozenset(frays))
        if key in faces:
            continue
        faces.append(key)
        kept.append(j)
    redundant = tuple(j for j in range(len(normals)) if j not in kept)
    index = {j: i for i, j in enumerate(kept)}
    irr = HPolyhedron(n, tuple(p.facets[j] for j in kept))
    vertices = tuple(Vertex(mu, tuple(index[j] for j in tight if j in index))
                     for mu, tight in verts)
    vertices = tuple(sorted(vertices, key=lambda v: v.active_set))
    simple = all(len(v.active_set) == n for v in vertices)
    return PolyhedronAnalysis(irr, tuple(kept), redundant, dim, True, simple,
                              not rays, vertices, tuple(rays))


def halfspace_cut(p: HPolyhedron, y: Sequence, epsilon, side: str = ">=") -> HalfspaceCut:
    """Intersect ``p`` with ``<mu, y> >= epsilon`` (or ``<=``)."""
    if side not in (">=", "<="):
        raise ValueError("side must be '>=' or '<='")
    tower = common_tower(list(p.normals), list(y), epsilon)
    y = tuple(coerce(c, tower) for c in y)
    if all(c == 0 for c in y):
        raise PolyhedronError("cut direction must be nonzero")
    eps = coerce(epsilon, tower)
    if side == "<=":
        y, eps = tuple(-c for c in y), -eps
    facets = tuple(Facet(tuple(coerce(c, tower) for c in f.normal), coerce(f.offset, tower))
                   for f in p.facets) + (Facet(y, eps),)
    a = analyze(HPolyhedron(p.ambient_dim, facets))
    d = len(p.facets)
    surviving = tuple(j for j in a.kept if j < d)
    dropped = tuple(j for j in range(d) if j not in a.kept)
    new = a.kept.index(d) if d in a.kept else None
    return HalfspaceCut(a.polyhedron, a, surviving, dropped, new)


def combinatorial_type(a: PolyhedronAnalysis) -> CombinatorialType:
    """Vertex-facet incidences and whether the face lattice is that of a simplex."""
    if not a.pointed:
        raise PolyhedronError("combinatorial type needs a pointed polyhedron")
    n = a.polyhedron.ambient_dim
    d = len(a.polyhedron.facets)
    incidence = tuple(tuple(j in v.active_set for j in range(d)) for v in a.vertices)
    simplex = (
        d == n + 1
        and len(a.vertices) == n + 1
        and {frozenset(v.active_set) for v in a.vertices}
        == {frozenset(s) for s in combinations(range(d), n)}
    )
    return CombinatorialType(incidence, simplex)


def vertex_cone(p: HPolyhedron, v: Vertex) -> HPolyhedron:
    """The tangent cone at ``v`` translated to the origin."""
    n = p.ambient_dim
    if len(v.active_set) != n:
        raise PolyhedronError("vertex is not simple")
    zero = p.tower.zero
    return HPolyhedron(n, tuple(Facet(p.facets[j].normal, zero) for j in v.active_set))
