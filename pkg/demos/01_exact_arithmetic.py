"""Exact arithmetic in the golden tower Q(sqrt5)(sqrt(2 + phi)).

Every number the package handles lives in a tower of real quadratic
extensions.  Equality is exact and signs are decided by refining dyadic
intervals, so comparisons never depend on floating point.
"""
from quasicut import RATIONALS, approximate, sign

t = RATIONALS.adjoin_sqrt(5, "r5")
phi = (1 + t.gen(0)) / 2
tower = t.adjoin_sqrt(2 + phi, "k")
phi, k = phi.embed(tower), tower.gen(1)

print("phi      =", phi)
print("phi^2    =", phi * phi, "  (= phi + 1:", phi * phi == phi + 1, ")")
print("1/phi    =", 1 / phi)
print("k^2      =", k * k)
print("phi/k    =", phi / k)

# A number that is tiny but not zero: phi^60 minus the 60th Lucas number.
a, b = 2, 1
for _ in range(59):
    a, b = b, a + b
tiny = phi ** 60 - b
print("phi^60 - L_60 =", tiny)
iv = approximate(tiny, 80)
print("  sign:", sign(tiny), f" enclosure: [{float(iv.lo):.6e}, {float(iv.hi):.6e}]")

print("sorted:", [str(x) for x in sorted([k, phi, 1 / phi, phi / k])])
