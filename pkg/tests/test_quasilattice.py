from fractions import Fraction

import pytest

from quasicut.quasilattice import (GroupPresentation, Quasilattice, QuasilatticeError, extend,
                                   line_subgroup, quotient, ray_scale, standard_lattice)

from builders import golden, pentagon

Z2 = standard_lattice(2)


def test_pentagonal_quasilattice():
    t, phi, k, ys = pentagon()
    q = Quasilattice(ys)
    assert q.free_rank == 4 and not q.is_lattice
    assert q.relations == ((1, 1, 1, 1, 1),)
    w = q.contains(ys[0])
    assert w.coefficients == (1, 0, 0, 0, 0)
    assert q.contains((t(0), k)).coefficients == (0, 1, 0, 0, -1)
    assert q.contains((t(0), k / 2)) is None
    y2_minus_y3 = tuple(a - b for a, b in zip(ys[2], ys[3]))
    assert q.combine(q.contains(y2_minus_y3).coefficients) == y2_minus_y3


def test_line_subgroup_kinds():
    t, phi, k, ys = pentagon()
    q = Quasilattice(ys)
    line = line_subgroup(q, ys[0])
    assert line.kind == "dense"
    assert [str(g) for g in line.generators] == ["1", "1/2 + 1/2*r5"]
    for g, w in zip(line.generators, line.witnesses):
        assert q.combine(w.coefficients) == tuple(g * c for c in ys[0])
    assert line_subgroup(Z2, (1, 1)).kind == "trivial"
    two = line_subgroup(Z2, (2, 2))
    assert two.kind == "finite_cyclic" and two.order == 2
    with pytest.raises(QuasilatticeError):
        line_subgroup(Z2, (0, 0))
    with pytest.raises(QuasilatticeError):
        line_subgroup(Z2, (Fraction(1, 2), 0))


def test_membership():
    assert Z2.contains((Fraction(1, 2), 0)) is None
    assert Z2.contains((3, -4)).coefficients == (3, -4)


def test_extension_and_quotient():
    t, phi, k = golden()
    q = extend(Z2, (1, phi))
    assert q.free_rank == 3
    assert quotient(q, Z2) == GroupPresentation(1)
    half = Quasilattice([(Fraction(1, 2), 0), (0, 1)])
    assert quotient(half, Z2) == GroupPresentation(0, (2,))
    assert str(quotient(half, Z2)) == "Z/2"
    with pytest.raises(QuasilatticeError):
        quotient(Z2, half)
    assert quotient(Z2, Z2).is_trivial


def test_equality_is_mutual_containment():
    assert Quasilattice([(1, 0), (1, 1)]) == Z2
    assert Quasilattice([(2, 0), (0, 1)]) != Z2


def test_ray_scale():
    t, phi, k = golden()
    assert ray_scale(Z2, (2, 4)) == Fraction(1, 2)
    assert ray_scale(Z2, (1, phi)) is None


def test_spanning_required():
    with pytest.raises(QuasilatticeError):
        Quasilattice([(1, 1), (2, 2)])


def test_group_presentation_str():
    assert str(GroupPresentation(2, (2,))) == "Z^2 + Z/2"
    assert GroupPresentation(0, (2, 6)).order == 12
    assert GroupPresentation(1).order is None
