"""The generalized Delzant construction for a Penrose kite.

The kite's normals lie in the pentagonal quasilattice spanned by the five
pentagon vectors, which is dense in the plane.  The construction gives a
4-dimensional quasifold cut out of C^4 by two quadrics and divided by a
group whose Lie algebra is 2-dimensional.
"""
from quasicut import HPolyhedron, Quasilattice, RATIONALS, analyze, build_model, isotropy, presentation
from quasicut.delzant import vertex_chart

t = RATIONALS.adjoin_sqrt(5, "r5")
phi = (1 + t.gen(0)) / 2
t = t.adjoin_sqrt(2 + phi, "k")
phi, k = phi.embed(t), t.gen(1)

ys = [(t(1), t(0)), (1 / (2 * phi), k / 2), (-phi / 2, k / (2 * phi)),
      (-phi / 2, -k / (2 * phi)), (1 / (2 * phi), -k / 2)]
q = Quasilattice(ys)
print("pentagonal quasilattice: rank", q.free_rank, "over Z, lattice:", q.is_lattice)

neg = lambda v: tuple(-c for c in v)
kite = HPolyhedron.from_inequalities([neg(ys[1]), ys[2], neg(ys[3]), ys[4]], [-1, 0, 0, -1], t)
a = analyze(kite)
print("\nkite vertices:")
for v in a.vertices:
    print("  ", tuple(str(c) for c in v.point))

m = build_model(presentation(kite, q))
print("\nlevel set in C^4 (rows [coefficients | constant]):")
for row in m.level_system:
    print("  ", [str(c) for c in row])
print("Lie algebra of N:")
for v in m.kernel:
    print("  ", [str(c) for c in v])
print("compact:", m.is_compact)

print("\nvertex charts:")
iso = isotropy(m)
for v, g in zip(m.vertices, iso.groups):
    ch = vertex_chart(m, v)
    print(f"  at {tuple(str(c) for c in v.point)}: active facets {[j + 1 for j in ch.active]}, "
          f"chart group {g}")
print("smooth (all chart groups trivial):", iso.smooth)
