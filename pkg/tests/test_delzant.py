import pytest

from quasicut.delzant import (DelzantError, build_model, fixed_points, find_variable_permutation,
                              isotropy, kernel_group_matches, level_system_matches, presentation,
                              vertex_chart)
from quasicut.polyhedra import HPolyhedron, pairing
from quasicut.quasilattice import standard_lattice
from quasicut import linalg

from builders import golden, kite, quadrant, random_simple_polytope, square
from oracles import OracleConfig


def test_kite_level_system():
    t, phi, k = golden()
    m = build_model(kite())
    rows = [(phi, 1, phi, 0, phi), (-1, 1, 0, phi, phi - 1)]
    assert level_system_matches(m, rows)
    assert not level_system_matches(m, [(1, 1, 1, 1, 1), (-1, 1, 0, phi, phi - 1)])


def test_kite_group():
    t, phi, k = golden()
    m = build_model(kite())
    lie = [(1, phi - 1, 1, 0), (-(phi - 1), phi - 1, 0, 1)]
    assert kernel_group_matches(m, lie)
    assert not kernel_group_matches(m, lie[:1])


def test_kite_isotropy_and_charts():
    m = build_model(kite())
    iso = isotropy(m)
    assert not iso.smooth
    assert all(str(g) == "Z^2" for g in iso.groups)
    for v, ch in fixed_points(m):
        for i, j in enumerate(ch.active):
            for l, jj in enumerate(ch.active):
                assert pairing(ch.alpha[i], m.normals[jj]) == (1 if i == l else 0)


def test_level_and_moment_map_at_vertices():
    m = build_model(kite())
    for v in m.vertices:
        sq = m.vertex_abs_sq(v)
        assert m.on_level_set(sq)
        assert m.moment_map(sq) == v.point


def test_group_element_lies_in_kernel_mod_q():
    m = build_model(kite())
    ch = vertex_chart(m, 0)
    x = [m.lam[0] * 0 + 1, m.lam[0] * 0 + 2]
    g = ch.group_element([1, 0, 2, 0, -1], x)
    image = linalg.matvec(m.pi, g)
    assert m.quasilattice.contains(image) is not None


def test_square_is_smooth():
    m = build_model(square())
    assert isotropy(m).smooth and m.is_compact
    assert level_system_matches(m, [(1, 0, 1, 0, 1), (0, 1, 0, 1, 1)])


def test_quadrant_has_no_level_equations():
    m = build_model(quadrant())
    assert m.level_system == () and not m.is_compact


def test_presentation_errors():
    q = standard_lattice(2)
    with pytest.raises(DelzantError):
        presentation(HPolyhedron.from_inequalities([(1, 0), (-1, 0)], [0, -1]), q)
    pyramid = HPolyhedron.from_inequalities(
        [(0, 0, 1), (1, 0, -1), (-1, 0, -1), (0, 1, -1), (0, -1, -1)], [0, -1, -1, -1, -1])
    with pytest.raises(DelzantError):
        presentation(pyramid, standard_lattice(3))
    t, phi, k = golden()
    with pytest.raises(DelzantError):
        presentation(HPolyhedron.from_inequalities([(1, 0), (0, 1), (-1, -phi)], [0, 0, -1]), q)
    with pytest.raises(DelzantError):
        presentation(HPolyhedron.from_inequalities([(1, 0), (0, 1)], [0, 0]), q, [(1, 1), None])


def test_variable_permutation():
    m = build_model(square())
    assert find_variable_permutation(m, [(0, 1, 0, 1, 1), (1, 0, 1, 0, 1)]) == (0, 1, 2, 3)


def test_random_kernel_and_vertex_consistency():
    cfg = OracleConfig(seed=5)
    rng = cfg.rng()
    for _ in range(25):
        p, _ = random_simple_polytope(rng, cfg)
        m = build_model(presentation(p, standard_lattice(p.ambient_dim)))
        zero = (m.lam[0] * 0,) * m.n
        assert all(linalg.matvec(m.pi, v) == zero for v in m.kernel)
        for v in m.vertices:
            sq = m.vertex_abs_sq(v)
            assert m.on_level_set(sq) and m.moment_map(sq) == v.point
