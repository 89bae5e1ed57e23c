"""Shared test inputs: the kite, small Delzant polytopes and random generators."""
from __future__ import annotations

from fractions import Fraction

from quasicut import RATIONALS, HPolyhedron, Quasilattice, presentation, standard_lattice
from quasicut.polyhedra import PolyhedronError, analyze


def golden():
    t = RATIONALS.adjoin_sqrt(5, "r5")
    phi = (1 + t.gen(0)) / 2
    t2 = t.adjoin_sqrt(2 + phi, "k")
    return t2, phi.embed(t2), t2.gen(1)


def pentagon():
    """The five pentagon vectors Y0..Y4 and the tower they live in."""
    t, phi, k = golden()
    ys = [(t(1), t(0)), (1 / (2 * phi), k / 2), (-phi / 2, k / (2 * phi)),
          (-phi / 2, -k / (2 * phi)), (1 / (2 * phi), -k / 2)]
    return t, phi, k, ys


def neg(v):
    return tuple(-c for c in v)


def kite():
    t, phi, k, ys = pentagon()
    p = HPolyhedron.from_inequalities([neg(ys[1]), ys[2], neg(ys[3]), ys[4]], [-1, 0, 0, -1], t)
    return presentation(p, Quasilattice(ys))


def square(side=1):
    p = HPolyhedron.from_inequalities([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, -side, -side])
    return presentation(p, standard_lattice(2))


def quadrant(q=None):
    p = HPolyhedron.from_inequalities([(1, 0), (0, 1)], [0, 0])
    return presentation(p, q or standard_lattice(2))


def random_simple_polytope(rng, cfg, n=None):
    """A random bounded simple full-dimensional rational polytope (box plus random facets)."""
    while True:
        dim = n or rng.randint(2, cfg.max_dim)
        bound = rng.randint(1, 3)
        normals, offsets = [], []
        for i in range(dim):
            e = tuple(int(i == j) for j in range(dim))
            normals += [e, neg(e)]
            offsets += [-bound, -bound]
        for _ in range(rng.randint(0, cfg.max_facets - 2 * dim)):
            x = tuple(rng.randint(-cfg.max_entry, cfg.max_entry) for _ in range(dim))
            if any(x):
                normals.append(x)
                offsets.append(Fraction(rng.randint(-2 * cfg.max_den * bound, 0), cfg.max_den))
        p = HPolyhedron.from_inequalities(normals, offsets)
        try:
            a = analyze(p)
        except PolyhedronError:
            continue
        if a.simple:
            return p, a


def random_smooth_polygon(rng, chops=None):
    """A Delzant polygon over Z^2: a rectangle or triangle with corners chopped off."""
    from quasicut.blowup import blow_up, max_epsilon, BlowupSpec

    a, b = rng.randint(2, 5), rng.randint(2, 5)
    if rng.random() < 0.5:
        p = HPolyhedron.from_inequalities([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, -a, -b])
    else:
        p = HPolyhedron.from_inequalities([(1, 0), (0, 1), (-1, -1)], [0, 0, -a])
    pres = presentation(p, standard_lattice(2))
    for _ in range(rng.randint(0, 3) if chops is None else chops):
        vs = pres.analysis.vertices
        v = vs[rng.randrange(len(vs))]
        x1, x2 = (pres.polyhedron.facets[j].normal for j in v.active_set)
        y = tuple(c1 + c2 for c1, c2 in zip(x1, x2))
        t = max_epsilon(pres, v, y)
        base = t.base_level
        top = t.value if t.value is not None else base + 2
        eps = base + (top - base) * Fraction(rng.randint(1, 3), 4)
        pres = blow_up(pres, BlowupSpec(v, y, eps)).cut.plus.presentation
    return pres
