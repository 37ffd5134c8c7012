"""Polyhedra circumscribed about the unit sphere and their isoperimetric quotients.

A tangency set X on the sphere defines the polyhedron cut out by the tangent
planes at X. Its volume is F/3, so IQ = 36 pi V^2 / F^3 = 4 pi / F, and
Voronoi cells of X lift onto its faces under central projection.

Run with ``python3 demos/03_circumscribed_polyhedra.py``.
"""

import math

import numpy as np

from spherekit import isoperimetric as I
from spherekit.bounds import goldberg_ft_rhs
from spherekit.geom import solid_tangency_points

print("Regular solids")
print("  solid          faces   F          IQ       face bound   margin")
for name in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"):
    P = I.circumscribe(solid_tangency_points(name))
    f = len(P.faces)
    q = I.iq(P)
    print(f"  {name:13s} {f:5d}   {P.surface_area:8.4f}   {q:.5f}  {goldberg_ft_rhs(f):.5f}     {goldberg_ft_rhs(f) - q:.1e}")
# equality holds exactly for 4, 6 and 12 faces, where the tangency points form
# regular triangular tessellations

print("\nRandom tangency sets never beat the face bound")
rng = np.random.default_rng(7)
for f in (5, 8, 13, 20):
    qs = [I.iq(I.circumscribe(I.random_admissible(f, rng))) for _ in range(50)]
    print(f"  f = {f:2d}: best IQ of 50 = {max(qs):.5f}  <=  {goldberg_ft_rhs(f):.5f}")

print("\nCentral projection of the cube onto the sphere")
P = I.circumscribe(solid_tangency_points("cube"))
rep = I.projection_report(P)
print(f"  Voronoi areas     {np.round(rep.voronoi_areas, 6)}  (2 pi / 3 = {2 * math.pi / 3:.6f})")
print(f"  lifted cell areas sum to {rep.preimage_area_sum:.12f}  (F = {P.surface_area:g})")
print(f"  projected vertices match Voronoi vertices to {rep.projected_vertex_match:.1e} rad")

print("\nLifted regular triangles: t / rho(t) at t = 4 pi / (2f - 4) reproduces the bound")
for f in (4, 6, 12, 30):
    print(f"  f = {f:2d}:  {I.lifted_triangle_bound(f):.12f}  vs  {goldberg_ft_rhs(f):.12f}")
print(f"  rho(pi/2) = {I.rho(math.pi / 2):.12f}: eight octant triangles lift to the cube's 24")
