"""How many unit spheres can touch one, and how good are the simple bounds?

Walks from the two-dimensional cap bounds on S^2 up to the simplex-density
bound in higher dimensions, then prints the one-sided kissing ratios.

Run with ``python3 demos/01_kissing_bounds.py``.
"""

import math

from spherekit import bounds as B

ICOSA = math.acos(1 / math.sqrt(5))

print("Code bound on S^2: largest N for a given minimal distance")
for label, phi in (("60 deg", math.pi / 3), ("icosahedral", ICOSA), ("90 deg", math.pi / 2)):
    print(f"  phi = {label:12s} N <= {B.ft_code_bound(phi):.6f}")
# 60 degrees is the three-dimensional kissing configuration: the bound allows 13.4,
# the truth is 12

print("\nPacking and covering densities against the regular solids")
for N in (4, 6, 12):
    print(f"  N = {N:2d}  packing <= {B.ft_packing_bound(N):.6f}   covering >= {B.ft_covering_bound(N):.6f}")
print(f"  icosahedral caps fill {B.cap_density(12, ICOSA / 2):.6f} of the sphere")

print("\nSimplex-density bound on kissing numbers (floor of the real bound)")
for n in range(4, 9):
    r = B.coxeter_bound(n, math.pi / 3)
    print(f"  n = {n}:  {r.value:10.4f}  ->  k({n}) <= {B.floor_with_slack(r.value):4d}"
          f"   (quadrature error {r.error_estimate:.1e})")

print("\nOne-sided kissing numbers kbar(n) = (k(n-1) + k(n)) / 2 from the kissing table")
table = B.KissingTable.default()
for n in (2, 3, 4):
    print(f"  n = {n}: kbar = {B.kbar(table, n):g}")
