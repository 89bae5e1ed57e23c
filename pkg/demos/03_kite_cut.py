"""Cutting the kite along its symmetry axis.

The cut direction Y0 = (1, 0) lies in the quasilattice, but its multiples
in the quasilattice form Z + phi Z, so the circle action used to cut has a
dense subgroup Lambda acting trivially.  Both halves are triangles whose
model is the same non-rational weighted projective space.
"""
from quasicut import CutSpec, cut, presentation
from quasicut.cli import load_example
from quasicut.docformat import parse

doc = parse(load_example("kite"))
pres = presentation(doc.polyhedron(), doc.quasilattice(), doc.witnesses())
res = cut(pres, CutSpec((1, 0), 0))

c = res.circle
print("Lambda:", c.line.describe())
print("chart vertex:", tuple(str(x) for x in c.chart_vertex.point))
print("b (Y in the chart's normals):", [str(b) for b in c.b])
print("nu- coefficients:", [str(x) for x in c.nu_minus.z_coefficients], "w:", c.nu_minus.w_coefficient)

for side in (res.plus, res.minus):
    m = side.model
    label = "plus" if side.sign > 0 else "minus"
    print(f"\n{label} side: {len(side.polyhedron.facets)} facets, surviving {side.surviving}")
    for row in m.level_system:
        print("  level row:", [str(x) for x in row])
    print("  (A^l, b) consistent with the cut model's chart:", side.a_block_consistent)

print("\nfixed points of the circle on the reduced space:", res.reduced.fixed_point_count)
for note in res.notes:
    print("note:", note)
