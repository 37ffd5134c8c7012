import dataclasses
import math

import numpy as np
import pytest

from spherekit import isoperimetric as I
from spherekit.bounds import goldberg_ft_rhs
from spherekit.geom import GeometryError, platonic_vertices, solid_tangency_points

# IQ and surface area of the Platonic solids with unit inradius, to 18 digits
IQ = {
    "tetrahedron": 0.302299894039036308,
    "cube": math.pi / 6,
    "octahedron": 0.604599788078072617,
    "dodecahedron": 0.754697399337405830,
    "icosahedron": 0.828797719252012022,
}
SURFACE = {
    "tetrahedron": 24 * math.sqrt(3),       # edge 2 sqrt 6
    "cube": 24.0,
    "octahedron": 20.78460969082652752,
    "dodecahedron": 16.6508730855465308,
}
FACES = {"tetrahedron": 4, "cube": 6, "octahedron": 8, "dodecahedron": 12, "icosahedron": 20}
VERTS = {"tetrahedron": 4, "cube": 8, "octahedron": 6, "dodecahedron": 20, "icosahedron": 12}


def simplex_directions(d):
    """``d + 1`` unit vectors in R^d with pairwise inner product ``-1/d``."""
    e = np.eye(d + 1) - 1.0 / (d + 1)
    x = e @ np.linalg.svd(e)[2][:d].T
    return x / np.linalg.norm(x, axis=1)[:, None]


# -- construction ---------------------------------------------------------------

def test_cube_from_octahedron_directions():
    P = I.circumscribe(platonic_vertices("octahedron"))
    assert P.n_faces == 6 and P.n_vertices == 8 and P.n_edges == 12
    assert abs(P.surface_area - 24.0) < 1e-12
    assert abs(P.volume - 8.0) < 1e-12
    assert np.allclose(np.sort(np.abs(P.vertices), axis=0), 1.0, atol=1e-12)


def test_tetrahedron_has_edge_two_root_six():
    P = I.circumscribe(solid_tangency_points("tetrahedron"))
    v = P.vertices
    edges = [np.linalg.norm(v[i] - v[j]) for i in range(4) for j in range(i + 1, 4)]
    assert np.allclose(edges, 2 * math.sqrt(6), atol=1e-12)
    assert abs(P.volume - 8 * math.sqrt(3)) < 1e-11


def test_solid_invariants(solid):
    P = I.circumscribe(solid_tangency_points(solid))
    assert (P.n_faces, P.n_vertices) == (FACES[solid], VERTS[solid])
    assert P.n_vertices - P.n_edges + P.n_faces == 2
    assert abs(P.volume - P.surface_area / 3) <= 1e-12 * P.volume
    assert abs(P.volume_check - P.volume) <= 1e-12 * P.volume
    assert np.all(np.linalg.norm(P.vertices, axis=1) >= 1 - 1e-12)
    if solid in SURFACE:
        assert abs(P.surface_area - SURFACE[solid]) < 1e-11
    # each face lies in its tangent plane
    for x, f in zip(P.tangency.points, P.faces):
        assert np.allclose(P.vertices[list(f)] @ x, 1.0, atol=1e-12)


def test_unbounded_and_degenerate_inputs():
    cap = [[math.cos(a), math.sin(a), 0.3] for a in np.linspace(0, 2 * math.pi, 5, endpoint=False)]
    with pytest.raises(GeometryError):
        I.circumscribe(cap)
    with pytest.raises(GeometryError):
        I.circumscribe(np.vstack([platonic_vertices("octahedron"), [[1, 0, 0]]]))
    with pytest.raises(GeometryError):
        I.circumscribe([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]])


def test_regular_simplex_in_four_dimensions():
    P = I.circumscribe(simplex_directions(4))
    # unit inradius: edge sqrt(2 d (d + 1)), volume a^d / d! sqrt((d + 1) / 2^d)
    a = math.sqrt(40.0)
    vol = a**4 / 24 * math.sqrt(5.0 / 16.0)
    assert abs(P.volume - vol) < 1e-10 * vol
    assert abs(P.volume_check - vol) < 1e-10 * vol
    assert abs(P.surface_area - 4 * vol) < 1e-10 * vol
    assert P.n_vertices == 5 and P.n_faces == 5
    with pytest.raises(NotImplementedError):
        P.n_edges


# -- isoperimetric quotient ----------------------------------------------------------

def test_iq_of_solids(solid):
    P = I.circumscribe(solid_tangency_points(solid))
    assert abs(I.iq(P) - IQ[solid]) < 1e-12
    assert I.centroid_defect(P) < 1e-12


def test_iq_simplicial_solids_meet_face_bound():
    for s in ("tetrahedron", "cube", "dodecahedron"):
        P = I.circumscribe(solid_tangency_points(s))
        assert abs(I.goldberg_margin(P)) < 1e-12


def test_iq_paths_cross_check():
    P = I.circumscribe(solid_tangency_points("cube"))
    bad = dataclasses.replace(P, volume_check=P.volume * 1.01)
    with pytest.raises(GeometryError):
        I.iq(bad)


def test_iq_face_bound_on_random_bodies(rng):
    for _ in range(500):
        f = int(rng.integers(4, 21))
        P = I.circumscribe(I.random_admissible(f, rng))
        q = I.iq(P)
        assert 0.0 < q <= goldberg_ft_rhs(f) + 1e-9
        assert P.n_vertices <= 2 * f - 4


def test_centroid_defect_detects_non_extremal(rng):
    P = I.circumscribe(I.random_admissible(9, rng))
    assert I.centroid_defect(P) > 1e-3


# -- central projection ------------------------------------------------------------------

def test_projection_cube():
    r = I.projection_report(I.circumscribe(platonic_vertices("octahedron")))
    assert r.projected_vertex_match < 1e-9
    assert np.allclose(r.voronoi_areas, 2 * math.pi / 3, atol=1e-12)
    assert abs(r.preimage_area_sum - 24.0) < 1e-9 * 24


def test_projection_dodecahedron():
    P = I.circumscribe(solid_tangency_points("dodecahedron"))
    r = I.projection_report(P)
    assert len(r.voronoi_areas) == 12
    assert np.ptp(r.voronoi_areas) < 1e-12
    assert r.face_area_sum_check < 1e-9 and r.delaunay_area_sum_check < 1e-9
    assert np.allclose(r.delaunay_areas, math.pi / 5, atol=1e-12)


def test_projection_tetrahedron_preimage_sum():
    P = I.circumscribe(solid_tangency_points("tetrahedron"))
    r = I.projection_report(P)
    assert abs(r.preimage_area_sum - P.surface_area) < 1e-9 * P.surface_area
    assert r.face_preimage_mismatch < 1e-9


def test_projection_identities_random(rng):
    for _ in range(30):
        f = int(rng.integers(4, 21))
        P = I.circumscribe(I.random_admissible(f, rng))
        r = I.projection_report(P)
        assert r.projected_vertex_match < 1e-9
        assert r.equidistance_spread < 1e-9
        assert r.face_area_sum_check < 1e-9 and r.delaunay_area_sum_check < 1e-9
        assert abs(r.preimage_area_sum - P.surface_area) < 1e-9 * P.surface_area
        assert r.face_preimage_mismatch < 1e-9


def test_projection_requires_three_dimensions():
    with pytest.raises(NotImplementedError):
        I.projection_report(I.circumscribe(simplex_directions(4)))


# -- lifted triangle area ----------------------------------------------------------------

def test_rho_octant_is_three():
    assert abs(I.rho(math.pi / 2) - 3.0) < 1e-12
    cube = I.circumscribe(platonic_vertices("octahedron"))
    assert abs(8 * I.rho(math.pi / 2) - cube.surface_area) < 1e-12


def test_rho_matches_solids():
    # Delaunay cells of the tangency points are regular triangles of area 4 pi / v
    for s, v in (("tetrahedron", 4), ("cube", 8), ("dodecahedron", 20)):
        P = I.circumscribe(solid_tangency_points(s))
        assert abs(v * I.rho(4 * math.pi / v) - P.surface_area) < 1e-10


def test_rho_small_area_limit():
    ratios = [I.rho(t) / t for t in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(r > 1 for r in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] - 1 < 1e-3


def test_rho_domain():
    for t in (0.0, -1.0, 2 * math.pi):
        with pytest.raises(ValueError):
            I.rho(t)


def test_lifted_bound_equals_face_bound():
    for f in range(4, 65):
        assert abs(I.lifted_triangle_bound(f) - goldberg_ft_rhs(f)) < 1e-9
    assert abs(I.lifted_triangle_bound(6) - math.pi / 6) < 1e-12
    with pytest.raises(ValueError):
        I.lifted_triangle_bound(3)


# -- higher dimensions -----------------------------------------------------------------------

def test_omega_sphere():
    assert abs(I.omega_sphere(2) - 2 * math.pi) < 1e-14
    assert abs(I.omega_sphere(3) - 4 * math.pi) < 1e-14
    assert abs(I.omega_sphere(4) - 2 * math.pi**2) < 1e-12
    with pytest.raises(ValueError):
        I.omega_sphere(1)


def test_omega_four_monte_carlo(rng):
    # Omega_4 = 4 vol(B^4), volume by hit fraction in [-1, 1]^4
    n = 2_000_000
    hit = (np.sum(rng.uniform(-1, 1, (n, 4)) ** 2, axis=1) <= 1.0).mean()
    est = 4 * 16 * hit
    se = 4 * 16 * math.sqrt(hit * (1 - hit) / n)
    assert abs(est - I.omega_sphere(4)) < 4 * se


def test_upper_bound_vertices():
    for n in range(4, 101):
        assert I.upper_bound_vertices(3, n) == 2 * n - 4
    assert I.upper_bound_vertices(3, 6) == 8
    assert I.upper_bound_vertices(4, 5) == 5
    # simple polytopes dual to cyclic 4-polytopes: n (n - 3) / 2
    for n in range(5, 40):
        assert I.upper_bound_vertices(4, n) == n * (n - 3) // 2
    with pytest.raises(ValueError):
        I.upper_bound_vertices(3, 3)


def test_regular_simplex_inner_products():
    for d, c in ((3, 0.2), (4, -0.1), (5, 0.9)):
        V = I.regular_simplex(d, c)
        G = V @ V.T
        assert np.allclose(np.diag(G), 1.0, atol=1e-14)
        assert np.allclose(G[~np.eye(d, dtype=bool)], c, atol=1e-14)
        R = math.acos(V.sum(axis=0) @ V[0] / np.linalg.norm(V.sum(axis=0)))
        assert abs(I.simplex_inner_product(d, R) - c) < 1e-12
    with pytest.raises(ValueError):
        I.regular_simplex(3, -0.6)


@pytest.mark.parametrize("t", [math.pi / 2, math.pi / 5])
def test_rho_d_three_matches_exact(t):
    r = I.rho_d(3, t, samples=1_000_000, seed=0)
    assert abs(r.value - I.rho(t)) < 3 * r.stderr
    assert r.stderr < 1e-2 * I.rho(t)


def test_rho_d_small_area_tends_to_area():
    ratios = [I.rho_d(4, t, samples=100_000, seed=1).value / t for t in (1e-1, 1e-2, 1e-3)]
    assert ratios[0] > ratios[1] > ratios[2] > 1.0
    assert ratios[2] - 1 < 0.05


def test_rho_d_stderr_is_calibrated():
    z = []
    for seed in range(12):
        r = I.rho_d(3, 1.0, samples=100_000, seed=seed)
        z.append((r.value - I.rho(1.0)) / r.stderr)
    assert abs(np.mean(z)) < 3 / math.sqrt(12)
    assert 0.4 < np.std(z) < 1.8


def test_rho_d_is_seeded():
    a = I.rho_d(4, 0.5, samples=50_000, seed=7)
    b = I.rho_d(4, 0.5, samples=50_000, seed=7)
    assert a == b


def test_rho_d_errors():
    with pytest.raises(ValueError):
        I.rho_d(2, 0.5)
    with pytest.raises(ValueError):
        I.rho_d(3, 0.5, samples=100)
    with pytest.raises(ValueError):
        I.rho_d(3, 7.0, samples=10_000)


# -- conjectured bounds ---------------------------------------------------------------------

def test_conjecture_report_dodecahedron_equality():
    P = I.circumscribe(solid_tangency_points("dodecahedron"))
    recs = {r.bound_name: r for r in I.conjecture_report(P)}
    assert set(recs) == {"vertex_form", "upper_bound_form"}
    v = recs["vertex_form"]
    assert abs(v.lhs - IQ["dodecahedron"]) < 1e-12
    assert abs(v.margin) < 1e-12 and v.stderr == 0.0


def test_conjecture_report_cube_upper_bound_form():
    P = I.circumscribe(platonic_vertices("octahedron"))
    r = {r.bound_name: r for r in I.conjecture_report(P)}["upper_bound_form"]
    assert abs(r.rhs - math.pi / 6) < 1e-6


def test_conjecture_report_four_simplex_is_consistent():
    # Delaunay cells of a regular simplex are congruent regular simplices
    P = I.circumscribe(simplex_directions(4))
    recs = I.conjecture_report(P, samples=400_000, seed=3)
    for r in recs:
        assert r.stderr > 0 and abs(r.margin) < 4 * r.stderr
