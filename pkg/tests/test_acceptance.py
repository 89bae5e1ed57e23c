"""End-to-end acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line (also collected into the
terminal summary) and then asserts, so a failure is both reported and fatal.
Symbolic criteria are checked with exact equality; timings are wall clock.
"""
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from quasicut import linalg
from quasicut.blowup import BlowupSpec, blow_up
from quasicut.cutting import CutSpec, arbitrary_cut, cut, validate_cut
from quasicut.delzant import (build_model, find_variable_permutation, isotropy, kernel_group_matches,
                              level_system_matches, presentation, vertex_chart)
from quasicut.exactfield import sign
from quasicut.intlinalg import lattice_basis, smith_invariants
from quasicut.polyhedra import analyze, pairing
from quasicut.quasilattice import standard_lattice

import conftest
from builders import golden, kite, quadrant, random_simple_polytope, random_smooth_polygon, square
from oracles import OracleConfig, naive_snf, naive_vertices, poly_field_check

CASES = 200


def record(number, title, ok, elapsed=None, limit=None, detail=""):
    within = limit is None or elapsed < limit
    timing = "" if elapsed is None else f" [{elapsed:.3f}s" + (f" < {limit}s]" if limit else "]")
    line = f"{'PASS' if ok and within else 'FAIL'} {number}: {title}{timing}"
    if detail:
        line += f" -- {detail}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line
    assert within, line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# ---------------------------------------------------------------------------
# 1-6: worked examples

def test_1_kite_level_system():
    t, phi, k = golden()

    def go():
        m = build_model(kite())
        rows = [(phi, 1, phi, 0, phi), (-1, 1, 0, phi, phi - 1)]
        return level_system_matches(m, rows) and len(m.level_system) == 2

    ok, dt = timed(go)
    record(1, "kite level system row-equivalent to the two displayed equations", ok, dt, 1)


def test_2_kite_vertices():
    t, phi, k = golden()

    def go():
        a = analyze(kite().polyhedron)
        want = {(t(0), t(0)), (1 / phi, phi / k), (t(0), 2 / k), (-1 / phi, phi / k)}
        return {v.point for v in a.vertices} == want and len(a.vertices) == 4

    ok, dt = timed(go)
    record(2, "kite vertices (0,0), (1/phi, phi/k), (0, 2/k), (-1/phi, phi/k)", ok, dt, 1)


def test_3_kite_cut():
    t, phi, k = golden()

    def go():
        res = cut(kite(), CutSpec((1, 0), 0))
        line = res.circle.line
        # write each generator of Q1 as a + b*phi; Q1 = Z + phi Z iff these span Z^2
        coords = []
        for g in line.generators:
            c0, c1, c2, c3 = g.coeffs
            a, b = c0 - c1, 2 * c1
            if c2 or c3 or a.denominator != 1 or b.denominator != 1:
                return False
            coords.append([int(a), int(b)])
        gens_ok = lattice_basis(coords, 2) == lattice_basis([[1, 0], [0, 1]], 2)
        triangle = [(1, phi, phi, 1)]
        sides_ok = True
        for side in (res.plus, res.minus):
            perm = find_variable_permutation(side.model, triangle)
            sides_ok &= perm is not None and kernel_group_matches(
                side.model, [(phi - 1, 1, 1)], [(0, phi, 0)], perm)
        return res.validation.ok and line.kind == "dense" and gens_ok and sides_ok

    ok, dt = timed(go)
    record(3, "kite cut at Y0, eps=0: dense Lambda over Z+phiZ, both sides the triangle model",
           ok, dt, 2)


def test_4_square_diagonal():
    def go():
        res = cut(square(), CutSpec((1, 1), 1))
        simplex = [(1, 1, 1, 1)]
        both = all(level_system_matches(s.model, simplex) and isotropy(s.model).smooth
                   for s in (res.plus, res.minus))
        return both and len(res.validation.vertices_on_hyperplane) == 2

    ok, dt = timed(go)
    record(4, "square diagonal cut: both sides the CP^2 simplex model, smooth, 2 vertices on H",
           ok, dt, 1)


def test_5_blowup_c2():
    def go():
        ok = True
        for eps in (Fraction(1, 1000), Fraction(1, 3), Fraction(1), Fraction(7, 2), Fraction(10 ** 6)):
            res = blow_up(quadrant(), BlowupSpec((0, 0), (1, 1), eps))
            plus = res.blown_up.polyhedron
            ok &= level_system_matches(res.exceptional.model, [(1, 1, 1, eps)])
            ok &= plus.normals == [(1, 0), (0, 1), (1, 1)] and plus.offsets == [0, 0, eps]
        return ok

    ok, dt = timed(go)
    record(5, "blow-up of C^2 along (1,1): scaled simplex and facets e1, e2, (1,1) at (0,0,eps)",
           ok, dt, 1)


def test_6_arbitrary_cut():
    t, phi, k = golden()

    def go():
        res = arbitrary_cut(quadrant(), CutSpec((1, phi), 1))
        ok = res.gamma.free_rank == 1 and res.gamma.torsion_orders == ()
        ok &= res.cut.circle.line.kind == "trivial"
        for side, s in ((res.cut.plus, 1), (res.cut.minus, -1)):
            ok &= level_system_matches(side.model, [(1, phi, -s, 1)])
            ok &= kernel_group_matches(side.model, [(1, phi, -s)])
        return ok

    ok, dt = timed(go)
    record(6, "cut of C^2 along (1, phi): Gamma = Z, Lambda trivial, exponents (1, phi, -+1)", ok, dt, 1)


# ---------------------------------------------------------------------------
# 7: property suites

def _random_element(rng, tower):
    return tower.element([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(tower.dimension)])


def _field_suite(rng):
    t, phi, k = golden()
    for _ in range(CASES):
        a, b, c = (_random_element(rng, t) for _ in range(3))
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c and a * b == b * a
        if a != 0:
            assert a * a.inverse() == 1
        assert sign(a * b) == sign(a) * sign(b) and sign(-a) == -sign(a)
        if sign(a) > 0 and sign(b) > 0:
            assert sign(a + b) > 0
        if abs(float(a)) > 1e-9:
            assert (float(a) > 0) == (sign(a) > 0)
        for op in "+-*/":
            if op != "/" or b != 0:
                assert poly_field_check(a, b, op)


def _vertex_suite(rng):
    cfg = OracleConfig(seed=rng.randint(0, 10 ** 6))
    r = cfg.rng()
    for _ in range(CASES):
        p, a = random_simple_polytope(r, cfg)
        want = naive_vertices([tuple(c.to_fraction() for c in x) for x in p.normals],
                              [o.to_fraction() for o in p.offsets])
        assert {tuple(c.to_fraction() for c in v.point) for v in a.vertices} == want


def _models(rng, count):
    cfg = OracleConfig(seed=rng.randint(0, 10 ** 6))
    r = cfg.rng()
    for _ in range(count):
        p, _ = random_simple_polytope(r, cfg)
        yield p, build_model(presentation(p, standard_lattice(p.ambient_dim)))


def _kernel_suite(rng):
    for _, m in _models(rng, CASES):
        zero = (m.lam[0] * 0,) * m.n
        assert len(m.kernel) == m.d - m.n
        assert all(linalg.matvec(m.pi, v) == zero for v in m.kernel)


def _level_suite(rng):
    for _, m in _models(rng, CASES):
        for v in m.vertices:
            sq = m.vertex_abs_sq(v)
            assert m.on_level_set(sq) and m.moment_map(sq) == v.point


def _random_cut(r, cfg):
    while True:
        p, a = random_simple_polytope(r, cfg)
        y = tuple(r.randint(-3, 3) for _ in range(p.ambient_dim))
        if not any(y):
            continue
        levels = sorted(pairing(v.point, y) for v in a.vertices)
        eps = levels[0] + (levels[-1] - levels[0]) * Fraction(r.randint(1, 7), 8)
        spec = CutSpec(y, eps)
        if validate_cut(p, spec, a).ok:
            return p, a, spec, cut(presentation(p, standard_lattice(p.ambient_dim), analysis=a), spec)


def _partition_suite(rng):
    cfg = OracleConfig(seed=rng.randint(0, 10 ** 6))
    r = cfg.rng()
    for _ in range(CASES):
        p, a, spec, res = _random_cut(r, cfg)
        y, eps = spec.direction, spec.level
        base = {v.point for v in a.vertices}
        plus = {v.point for v in res.plus.halfspace.analysis.vertices}
        minus = {v.point for v in res.minus.halfspace.analysis.vertices}
        on_h = {v for v in plus | minus if pairing(v, y) == eps}
        assert plus & minus == on_h
        assert {v for v in plus if pairing(v, y) > eps} == {v for v in base if pairing(v, y) > eps}
        assert {v for v in minus if pairing(v, y) < eps} == {v for v in base if pairing(v, y) < eps}
        assert {w.point for w in res.validation.vertices_on_hyperplane} == base & on_h
        for side in (res.plus, res.minus):
            assert len(side.polyhedron.facets) == side.l + 1
            if side.a_block_consistent is not None:
                assert side.a_block_consistent


def _b_suite(rng):
    cfg = OracleConfig(seed=rng.randint(0, 10 ** 6))
    r = cfg.rng()
    for _ in range(CASES):
        p, a, spec, res = _random_cut(r, cfg)
        c, n = res.circle, p.ambient_dim
        zero = spec.level * 0
        total = tuple(sum((b * a.polyhedron.normals[j][i] for j, b in zip(c.chart_facets, c.b)), zero)
                      for i in range(n))
        assert total == tuple(zero + x for x in spec.direction)


def _snf_suite(rng):
    for _ in range(CASES):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        mat = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        assert smith_invariants(mat, cols) == naive_snf(mat)


def _smooth_suite(rng):
    for _ in range(CASES):
        pres = random_smooth_polygon(rng)
        m = build_model(pres)
        for v in m.vertices:
            x1, x2 = (m.normals[j] for j in vertex_chart(m, v).active)
            assert abs(x1[0] * x2[1] - x1[1] * x2[0]) == 1
        assert isotropy(m).smooth


SUITES = [
    ("field axioms and sign laws (with polynomial oracle)", _field_suite),
    ("vertex enumeration vs naive oracle", _vertex_suite),
    ("kernel basis satisfies pi(V) = 0", _kernel_suite),
    ("vertices lie on the level set and map to themselves", _level_suite),
    ("cut partitions the vertex set", _partition_suite),
    ("sum b_j X_j = Y at the chart vertex", _b_suite),
    ("Smith invariants vs naive oracle", _snf_suite),
    ("random Delzant polygons over Z^2 are smooth", _smooth_suite),
]


@pytest.mark.parametrize("index", range(len(SUITES)), ids=[f"7{chr(97 + i)}" for i in range(len(SUITES))])
def test_7_property_suites(index):
    import random

    title, suite = SUITES[index]
    ok, detail = True, f"{CASES} seeded cases"
    t0 = time.perf_counter()
    try:
        suite(random.Random(1000 + index))
    except AssertionError as e:
        ok, detail = False, f"counterexample: {e!r}"
    record(f"7{chr(97 + index)}", title, ok, time.perf_counter() - t0, detail=detail)


# ---------------------------------------------------------------------------
# 8: determinism

def test_8_determinism():
    names = ["kite", "quadrant-blowup", "square-diagonal", "arbitrary-c2"]

    def once(name):
        r = subprocess.run([sys.executable, "-m", "quasicut.cli", "example", name],
                           capture_output=True)
        return r.returncode, r.stdout

    ok = True
    for name in names:
        first, second = once(name), once(name)
        ok &= first[0] == 0 and first == second and len(first[1]) > 0
    record(8, "example reports are byte-identical across two runs", ok)
