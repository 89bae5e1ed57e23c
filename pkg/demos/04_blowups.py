"""Blow-ups as cuts: C^2 at the origin, and corners of a square.

A blow-up at a fixed point is a cut whose cut-off piece is a simplex.  For
C^2 every level works; for the unit square the admissible levels stop at
the next vertex.  The local model at the apex of a cone shows how the
circle's weights come from the dual basis.
"""
from fractions import Fraction

from quasicut import (BlowupSpec, HPolyhedron, blow_up, extend, local_model, max_epsilon,
                      presentation, standard_lattice, RATIONALS)

z2 = standard_lattice(2)
quadrant = presentation(HPolyhedron.from_inequalities([(1, 0), (0, 1)], [0, 0]), z2)
res = blow_up(quadrant, BlowupSpec((0, 0), (1, 1), Fraction(1, 2)))
plus = res.blown_up.polyhedron
print("blown-up C^2 facets:")
for x, o in zip(plus.normals, plus.offsets):
    print(f"  <mu, ({x[0]}, {x[1]})> >= {o}")
print("exceptional piece level set:", [[str(x) for x in r] for r in res.exceptional.model.level_system])

square = presentation(HPolyhedron.from_inequalities([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, -1, -1]), z2)
th = max_epsilon(square, (0, 0), (1, 1))
print("\nsquare corner threshold:", th.value)
for chk in th.checks:
    print(f"  level {chk.level}: simplex {chk.simplex_type} ({chk.role})")

# local models: the circle weights and the group Gamma at the apex
t = RATIONALS.adjoin_sqrt(5, "r5")
phi = (1 + t.gen(0)) / 2
for name, cone in [
    ("C^2 over Z^2", quadrant),
    ("C^2 over Z^2 + (1, phi)Z", presentation(quadrant.polyhedron, extend(z2, (1, phi)))),
    ("cone (1,0), (1,2) over Z^2", presentation(HPolyhedron.from_inequalities([(1, 0), (1, 2)], [0, 0]), z2)),
]:
    lm = local_model(cone, (1, 1), 1)
    print(f"\n{name}: Gamma = {lm.gamma}, weights + {[str(e) for e in lm.exponents_plus]}, "
          f"- {[str(e) for e in lm.exponents_minus]}, correspondence holds: {lm.correspondence_holds}")
