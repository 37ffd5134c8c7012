import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spherekit import geom as G

E1, E2, E3 = np.eye(3)


def test_unit_vector_normalizes_and_rejects_zero():
    v = G.unit_vector([3.0, 4.0, 0.0])
    assert abs(np.linalg.norm(v) - 1.0) < 1e-12
    with pytest.raises(G.GeometryError):
        G.unit_vector([0.0, 0.0, 0.0])
    with pytest.raises(G.GeometryError):
        G.as_points([[1, 0, 0], [0, 0, 0]])


@pytest.mark.parametrize("u, v, expected", [(E1, E1, 0.0), (E1, -E1, math.pi), (E1, E2, math.pi / 2)])
def test_angular_distance_axes(u, v, expected):
    assert abs(G.angular_distance(u, v) - expected) < 1e-15


def test_angular_distance_small_angles_stay_accurate():
    t = 1e-9
    v = np.array([math.cos(t), math.sin(t), 0.0])
    assert abs(G.angular_distance(E1, v) - t) < 1e-20
    assert abs(G.angular_distance(-E1, v) - (math.pi - t)) < 1e-15


def test_angular_distance_higher_dimension_and_mismatch():
    assert abs(G.angular_distance([1, 0, 0, 0], [0, 0, 0, 2]) - math.pi / 2) < 1e-15
    with pytest.raises(G.GeometryError):
        G.angular_distance([1, 0, 0], [1, 0])


@given(st.lists(st.floats(-1, 1), min_size=9, max_size=9))
def test_triangle_inequality(c):
    a, b, x = np.array(c).reshape(3, 3) + np.array([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    d = G.angular_distance
    assert d(a, x) <= d(a, b) + d(b, x) + 1e-12


@pytest.mark.parametrize("name, expected", [
    ("octahedron", math.pi / 2),
    ("cube", math.acos(1.0 / 3.0)),
    ("icosahedron", math.acos(1.0 / math.sqrt(5.0))),
    ("tetrahedron", math.acos(-1.0 / 3.0)),
])
def test_min_pairwise_of_solids(name, expected):
    assert abs(G.min_pairwise(G.platonic_vertices(name)) - expected) < 1e-12


def test_spherical_code_is_normalized_and_read_only():
    c = G.SphericalCode([[2, 0, 0], [0, 0, 5]])
    assert np.allclose(np.linalg.norm(c.points, axis=1), 1.0, atol=1e-12)
    assert c.n == 2 and c.dimension == 3 and len(c) == 2
    assert abs(c.psi - math.pi / 2) < 1e-15
    with pytest.raises(ValueError):
        c.points[0, 0] = 3.0
    with pytest.raises(G.GeometryError):
        G.SphericalCode([[1, 0, 0]])


def test_regular_triangle_area_values():
    assert abs(G.regular_triangle_area(math.pi / 2) - math.pi / 2) < 1e-14
    # l'Huilier's formula in 30-digit arithmetic
    assert abs(G.regular_triangle_area(math.pi / 3) - 0.551285598432530807942) < 1e-14
    assert abs(G.regular_triangle_area(math.acos(1 / math.sqrt(5))) - math.pi / 5) < 1e-14


def test_regular_triangle_area_matches_excess_of_explicit_triangle():
    phi = 0.8
    a = E3
    b = np.array([math.sin(phi), 0.0, math.cos(phi)])
    # third vertex at distance phi from both
    cz = math.cos(phi)
    cx = (math.cos(phi) - cz * b[2]) / b[0]
    c = np.array([cx, math.sqrt(1 - cx * cx - cz * cz), cz])
    assert abs(G.spherical_triangle_area(a, b, c) - G.regular_triangle_area(phi)) < 1e-13


def test_regular_triangle_side_inverse():
    assert abs(G.regular_triangle_side(math.pi / 2) - math.pi / 2) < 1e-14
    assert abs(G.regular_triangle_side(math.pi / 5) - math.acos(1 / math.sqrt(5))) < 1e-14
    for x in (0.1, 0.5, 1.0, 1.5):
        assert abs(G.regular_triangle_side(G.regular_triangle_area(x)) - x) < 1e-10


@given(st.floats(1e-3, 2 * math.pi / 3 - 1e-3), st.floats(1e-3, 2 * math.pi / 3 - 1e-3))
def test_triangle_area_monotone(p, q):
    if p < q:
        assert G.regular_triangle_area(p) < G.regular_triangle_area(q)


def test_regular_triangle_domains():
    with pytest.raises(ValueError):
        G.regular_triangle_area(2 * math.pi / 3 + 0.1)
    with pytest.raises(ValueError):
        G.regular_triangle_side(-1.0)


def test_polygon_areas():
    assert abs(G.spherical_polygon_area([E1, E2, E3]) - math.pi / 2) < 1e-14
    square = [E1, E2, -E1, -E2]
    assert abs(G.spherical_polygon_area(square) - 2 * math.pi) < 1e-14
    # a lune given by its two antipodal corners is degenerate
    with pytest.raises(G.GeometryError):
        G.spherical_polygon_area([E3, E1, -E3])


def test_project_to_tangent():
    assert np.allclose(G.project_to_tangent(E3, E3), E3, atol=1e-15)
    assert np.allclose(G.project_to_tangent(E3, (E1 + E3) / math.sqrt(2)), [1, 0, 1], atol=1e-15)
    with pytest.raises(G.GeometryError):
        G.project_to_tangent(E3, E1)


def test_projection_area_law():
    # image area / spherical area of a shrinking patch tends to sec^3 theta
    theta = 0.6
    x = E3
    c = np.array([math.sin(theta), 0.0, math.cos(theta)])
    u = np.cross(c, E2)
    u /= np.linalg.norm(u)
    ratios = []
    for h in (1e-2, 1e-3, 1e-4):
        p = [G.unit_vector(c + h * s * u + h * t * E2) for s, t in ((0, 0), (0, 1), (1, 1), (1, 0))]
        sph = G.spherical_polygon_area(p)
        q = [G.project_to_tangent(x, v) for v in p]
        flat = 0.5 * abs(np.cross(q[2] - q[0], q[3] - q[1])[2])
        ratios.append(flat / sph)
    target = 1 / math.cos(theta) ** 3
    errs = [abs(r - target) for r in ratios]
    assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-3 * target


def test_octahedron_tessellation():
    t = G.tessellate(G.platonic_vertices("octahedron"))
    assert len(t.delaunay) == 8
    assert np.allclose(t.delaunay_areas(), math.pi / 2, atol=1e-13)
    assert np.allclose(t.voronoi_areas(), 2 * math.pi / 3, atol=1e-13)


def test_icosahedron_tessellation_against_hull_oracle():
    from scipy.spatial import ConvexHull

    x = G.platonic_vertices("icosahedron")
    t = G.tessellate(x)
    assert len(t.delaunay) == len(ConvexHull(x).simplices) == 20
    assert all(len(c) == 5 for c in t.voronoi_cells)
    assert abs(t.delaunay_areas().sum() - 4 * math.pi) < 1e-9
    assert abs(t.voronoi_areas().sum() - 4 * math.pi) < 1e-9


def test_tessellation_conservation_random(rng):
    done = 0
    while done < 200:
        n = int(rng.integers(4, 51))
        try:
            t = G.tessellate(G.random_points(n, 3, rng))
        except G.GeometryError:
            continue  # the sample fits in a hemisphere
        done += 1
        assert abs(t.delaunay_areas().sum() - 4 * math.pi) < 1e-9
        assert abs(t.voronoi_areas().sum() - 4 * math.pi) < 1e-9
        p = t.sites.points
        for k, tri in enumerate(t.delaunay):
            d = np.arccos(np.clip(p[tri] @ t.circumcenters[k], -1, 1))
            assert np.ptp(d) < 1e-9
        # empty circumcap: no site is closer to a circumcenter than the circumradius
        all_d = np.arccos(np.clip(t.circumcenters @ p.T, -1, 1))
        assert np.all(all_d >= t.circumradii[:, None] - 1e-9)


def test_tessellation_rejects_hemisphere_and_collapses_duplicates():
    with pytest.raises(G.GeometryError):
        G.tessellate([[1, 0, 0.1], [0, 1, 0.1], [-1, 0, 0.1], [0, -1, 0.1]])
    x = np.vstack([G.platonic_vertices("octahedron"), [[1, 1e-12, 0]]])
    t = G.tessellate(x)
    assert t.collapsed == (6,) and t.sites.n == 6


def test_neighbors_are_counterclockwise():
    t = G.tessellate(G.platonic_vertices("icosahedron"))
    p = t.sites.points
    for i, nb in enumerate(t.neighbors()):
        assert len(nb) == 5
        for a, b in zip(nb, nb[1:] + nb[:1]):
            assert np.linalg.det(np.array([p[i], p[a], p[b]])) > 0


def test_solid_tangency_points_are_dual_vertices():
    assert np.allclose(G.solid_tangency_points("cube"), G.platonic_vertices("octahedron"))
    with pytest.raises(ValueError):
        G.solid_tangency_points("torus")


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_random_points_on_sphere(seed):
    x = G.random_points(7, 4, seed)
    assert x.shape == (7, 4)
    assert np.allclose(np.linalg.norm(x, axis=1), 1.0, atol=1e-12)
