"""Spread N points on the sphere, then read off their contact graphs.

Seeded runs are reproducible: the same master seed gives the same points
regardless of thread count.

Run with ``python3 demos/02_tammes_and_contacts.py`` (about a minute).
"""

import math

from spherekit import optimize as O
from spherekit.bounds import tammes_upper_bound
from spherekit.contacts import build_contact_graph, edge_count, irreducible_by_count, is_maximal_packing

cfg = O.OptimizerConfig(restarts=25, iterations_per_restart=1500, master_seed=0)

print(" N   psi (deg)   upper bound   contacts  faces  maximal")
for N in range(4, 13):
    r = O.tammes_solve(N, cfg)
    G = build_contact_graph(r.code)
    faces = len(G.faces) if G.faces is not None else "-"
    print(f"{N:2d}   {math.degrees(r.psi):9.4f}   {math.degrees(tammes_upper_bound(N)):11.4f}"
          f"   {edge_count(G):8d}  {faces:>5}  {is_maximal_packing(G)}")
# N = 7 and N = 8 are the first cases where the optimum is not a vertex set of a
# regular solid: the square antiprism (N = 8) still has every point touching four others

print("\nAntipodal codes: M free points plus their mirror images")
for M in range(2, 7):
    r = O.antipodal_solve(M, cfg)
    print(f"  M = {M}:  psi = {math.degrees(r.psi):.4f} deg")

print("\nMost contacts for 12 points at 60 degrees")
r = O.max_contacts(12, math.pi / 3, cfg)
G = build_contact_graph(r.code, contact_distance=r.contact_distance)
print(f"  {r.contacts} contacts, irreducible by count: {irreducible_by_count(G)}")

print("\nHow many points fit in a closed hemisphere at 60 degrees?")
for n in (9, 10):
    res, ok = O.hemisphere_code_search(n, math.pi / 3, cfg)
    print(f"  {n} points: best psi {math.degrees(res.psi):.4f} deg, feasible {ok}")
