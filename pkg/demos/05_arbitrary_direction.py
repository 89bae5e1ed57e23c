"""Cutting C^2 along a direction outside the lattice.

Y = (1, phi) is not in Z^2.  Cutting along it means working with the
larger quasilattice Z^2 + Y Z and remembering the quotient Gamma = Z that
separates the two; the resulting pieces are quasifolds even though C^2
itself is smooth.
"""
from quasicut import CutSpec, HPolyhedron, RATIONALS, arbitrary_cut, presentation, standard_lattice

t = RATIONALS.adjoin_sqrt(5, "r5")
phi = (1 + t.gen(0)) / 2
quadrant = presentation(HPolyhedron.from_inequalities([(1, 0), (0, 1)], [0, 0]), standard_lattice(2))
res = arbitrary_cut(quadrant, CutSpec((1, phi), 1))
print("direction outside Q:", res.extended)
print("Gamma:", res.gamma, " Lambda:", res.cut.circle.line.describe())
for side in (res.cut.plus, res.cut.minus):
    print("level row:", [str(x) for x in side.model.level_system[0]])
for note in res.notes:
    print("note:", note)
