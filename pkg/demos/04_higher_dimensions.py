"""Lifted simplex areas in higher dimensions by seeded Monte Carlo.

rho_d(t) is the area of the central-projection lift of a regular spherical
simplex of area t. In three dimensions it has a closed form, which makes a
direct check of the sampler. The last block evaluates the conjectured IQ
bounds for the regular 4-simplex, an equality case.

Run with ``python3 demos/04_higher_dimensions.py`` (about 20 seconds).
"""

import math

import numpy as np

from spherekit import isoperimetric as I

print("d = 3: Monte Carlo against the exact lift")
for t in (0.3, math.pi / 5, math.pi / 2, 2.5):
    r = I.rho_d(3, t, samples=400_000, seed=1)
    exact = I.rho(t)
    print(f"  t = {t:.4f}:  {r.value:.5f} +- {r.stderr:.5f}   exact {exact:.5f}   z = {(r.value - exact) / r.stderr:+.2f}")

print("\nd = 4: rho_d(t) / t tends to 1 for small simplices")
for t in (2.0, 0.5, 0.1, 0.02, 0.005):
    r = I.rho_d(4, t, samples=400_000, seed=2)
    print(f"  t = {t:.3f}:  ratio {r.value / t:.4f} +- {r.stderr / t:.4f}")

print(f"\nVertex limits h_4(n) = n(n-3)/2: {[I.upper_bound_vertices(4, n) for n in range(5, 11)]}")

e = np.eye(5) - 0.2
x = e @ np.linalg.svd(e)[2][:4].T
P = I.circumscribe(x / np.linalg.norm(x, axis=1)[:, None])
print(f"\nRegular 4-simplex about S^3: IQ = {I.iq(P):.6f}")
# equality case: the margin is zero up to Monte Carlo error
for rec in I.conjecture_report(P, samples=400_000, seed=3):
    print(f"  {rec.bound_name:16s} rhs {rec.rhs:.6f}  margin {rec.margin:+.1e} +- {rec.stderr:.1e}")
