"""Spherical geometry primitives.

Points on S^{d-1} are plain ``(d,)`` float arrays; finite point sets are
``(N, d)`` arrays wrapped in :class:`SphericalCode`. Most routines here are
specific to the 2-sphere in R^3 (tessellations, polygon areas, tangent-plane
projection); distances and minimum separation work in any dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, QhullError

# Tolerances (configurable per call where it matters).
UNIT_TOL = 1e-12
DUPLICATE_TOL = 1e-10
ORIENT_EPS = 1e-12
AREA_TOL = 1e-9

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


class GeometryError(ValueError):
    """Raised for degenerate or out-of-domain geometric input."""


def unit_vector(coords) -> np.ndarray:
    """Normalize ``coords`` to a unit vector; rejects the zero vector."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise GeometryError(f"a unit vector needs a 1-d array of length >= 2, got shape {v.shape}")
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n == 0.0:
        raise GeometryError("cannot normalize a zero (or non-finite) vector")
    return v / n


def as_points(points) -> np.ndarray:
    """Return ``points`` as a normalized ``(N, d)`` float array."""
    x = np.array(points, dtype=float)
    if x.ndim != 2 or x.shape[1] < 2:
        raise GeometryError(f"expected an (N, d) array with d >= 2, got shape {x.shape}")
    norms = np.linalg.norm(x, axis=1)
    if np.any(~np.isfinite(norms)) or np.any(norms == 0.0):
        raise GeometryError("point set contains a zero or non-finite row")
    return x / norms[:, None]


def angular_distance(u, v) -> float:
    """Great-circle distance between two unit vectors, in ``[0, pi]``.

    In R^3 this is ``atan2(|u x v|, u . v)``, which keeps full precision near
    0 and pi. Other dimensions fall back to a clamped arccos.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise GeometryError(f"dimension mismatch: {u.shape} vs {v.shape}")
    if u.shape == (3,):
        return float(math.atan2(np.linalg.norm(np.cross(u, v)), float(u @ v)))
    return float(math.acos(min(1.0, max(-1.0, float(u @ v)))))


def pairwise_angles(x: np.ndarray) -> np.ndarray:
    """Matrix of angular distances between the rows of ``x`` (diagonal 0)."""
    x = np.asarray(x, dtype=float)
    dots = x @ x.T
    if x.shape[1] == 3:
        cr = np.linalg.norm(np.cross(x[:, None, :], x[None, :, :]), axis=-1)
        ang = np.arctan2(cr, dots)
    else:
        ang = np.arccos(np.clip(dots, -1.0, 1.0))
    np.fill_diagonal(ang, 0.0)
    return ang


def min_pairwise(points) -> float:
    """Minimum angular distance over distinct pairs (the code's psi).

    Duplicate points give 0. Exact O(N^2) scan.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise GeometryError("need at least two points")
    ang = pairwise_angles(x)
    iu = np.triu_indices(x.shape[0], k=1)
    return float(ang[iu].min())


@dataclass(frozen=True)
class SphericalCode:
    """A finite point set on S^{d-1} with its minimum separation ``psi``.

    Coordinates are normalized on construction and stored read-only.
    """

    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = as_points(self.points)
        if x.shape[0] < 2:
            raise GeometryError("a spherical code needs at least two points")
        x.setflags(write=False)
        object.__setattr__(self, "points", x)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @cached_property
    def psi(self) -> float:
        return min_pairwise(self.points)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"SphericalCode(n={self.n}, d={self.dimension}, psi={self.psi:.12g})"


def regular_triangle_area(phi: float) -> float:
    """Area of the regular spherical triangle with side ``phi``.

    ``3 arccos(cos phi / (1 + cos phi)) - pi``, valid for ``0 < phi < 2 pi/3``.
    """
    if not 0.0 < phi < 2.0 * math.pi / 3.0:
        raise GeometryError(f"side {phi!r} outside (0, 2pi/3)")
    c = math.cos(phi)
    return 3.0 * math.acos(c / (1.0 + c)) - math.pi


def regular_triangle_side(t: float) -> float:
    """Side length of the regular spherical triangle of area ``t``.

    Inverts :func:`regular_triangle_area` in closed form. With
    ``k = cos((t + pi)/3)`` the side satisfies ``cos phi = k / (1 - k)``; the
    half-angle form below avoids cancellation for small triangles.
    """
    if not 0.0 < t < 2.0 * math.pi:
        raise GeometryError(f"area {t!r} outside (0, 2pi)")
    k = math.cos((t + math.pi) / 3.0)
    # 1 - cos(phi) = (1 - 2k)/(1 - k),  1 - 2k = 4 sin((t + 2pi)/6) sin(t/6)
    one_minus_c = 4.0 * math.sin((t + 2.0 * math.pi) / 6.0) * math.sin(t / 6.0) / (1.0 - k)
    return 2.0 * math.asin(min(1.0, math.sqrt(one_minus_c / 2.0)))


def spherical_polygon_area(cycle) -> float:
    """Area of a simple spherical polygon by its spherical excess.

    ``cycle`` lists the vertices counterclockwise as seen from outside the
    sphere. Consecutive duplicate or antipodal vertices are rejected since
    the connecting arc is undefined.
    """
    v = as_points(cycle)
    if v.shape[1] != 3:
        raise GeometryError("polygon areas are defined on S^2 only")
    n = v.shape[0]
    if n < 3:
        raise GeometryError("a polygon needs at least three vertices")
    total = 0.0
    for i in range(n):
        a, b, c = v[i - 1], v[i], v[(i + 1) % n]
        t_in = a - (a @ b) * b
        t_out = c - (c @ b) * b
        if np.linalg.norm(t_in) < DUPLICATE_TOL or np.linalg.norm(t_out) < DUPLICATE_TOL:
            raise GeometryError(f"degenerate polygon: vertex {i} coincides with or is antipodal to a neighbor")
        ang = math.atan2(float(b @ np.cross(t_out, t_in)), float(t_out @ t_in))
        if ang <= 0.0:
            ang += 2.0 * math.pi
        total += ang
    return total - (n - 2) * math.pi


def spherical_triangle_area(a, b, c) -> float:
    """Signed area of the spherical triangle ``abc`` (Van Oosterom-Strackee)."""
    a, b, c = (np.asarray(p, dtype=float) for p in (a, b, c))
    num = float(a @ np.cross(b, c))
    den = 1.0 + float(a @ b) + float(b @ c) + float(c @ a)
    return 2.0 * math.atan2(num, den)


def project_to_tangent(x, y) -> np.ndarray:
    """Central projection of ``y`` onto the tangent plane ``{p : p.x = 1}``.

    Raises when ``y`` is 90 degrees or more from ``x`` (the ray from the
    origin never meets the plane).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise GeometryError("dimension mismatch")
    c = float(x @ y)
    if c <= ORIENT_EPS:
        raise GeometryError("point is at least 90 degrees from the tangency point")
    return y / c


def circumcenter(a, b, c) -> np.ndarray:
    """Spherical circumcenter of a counterclockwise triangle on S^2."""
    n = np.cross(np.asarray(b) - a, np.asarray(c) - a)
    nn = np.linalg.norm(n)
    if nn < ORIENT_EPS:
        raise GeometryError("collinear triangle has no circumcenter")
    return n / nn


@dataclass(frozen=True)
class SphericalTessellation:
    """Delaunay triangulation of a point set on S^2 and its Voronoi dual.

    ``delaunay`` holds counterclockwise index triples into ``sites.points``;
    ``circumcenters[k]`` is the Voronoi vertex of triangle ``k``;
    ``voronoi_cells[i]`` is the counterclockwise vertex cycle of site ``i``'s
    cell and ``voronoi_index[i]`` the matching circumcenter indices.
    Near-duplicate input points are dropped before construction and listed
    in ``collapsed``.
    """

    sites: SphericalCode
    delaunay: np.ndarray
    circumcenters: np.ndarray
    voronoi_index: tuple
    collapsed: tuple = ()

    @property
    def delaunay_cells(self) -> list[np.ndarray]:
        p = self.sites.points
        return [p[t] for t in self.delaunay]

    @property
    def voronoi_cells(self) -> list[np.ndarray]:
        return [_dedupe_cycle(self.circumcenters[list(ix)]) for ix in self.voronoi_index]

    @cached_property
    def circumradii(self) -> np.ndarray:
        p = self.sites.points
        dots = np.einsum("ij,ij->i", self.circumcenters, p[self.delaunay[:, 0]])
        return np.arccos(np.clip(dots, -1.0, 1.0))

    def delaunay_areas(self) -> np.ndarray:
        p = self.sites.points
        return np.array([spherical_triangle_area(*p[t]) for t in self.delaunay])

    def voronoi_areas(self) -> np.ndarray:
        return np.array([spherical_polygon_area(c) for c in self.voronoi_cells])

    def neighbors(self) -> list[list[int]]:
        """Delaunay neighbors of each site, in counterclockwise order."""
        out = []
        for i, ring in enumerate(self.voronoi_index):
            nb = []
            for k in ring:
                t = list(self.delaunay[k])
                j = t.index(i)
                nb.append(int(t[(j + 1) % 3]))
            out.append(nb)
        return out


def _dedupe_cycle(cycle: np.ndarray, tol: float = DUPLICATE_TOL) -> np.ndarray:
    keep = [0]
    for i in range(1, len(cycle)):
        if np.linalg.norm(cycle[i] - cycle[keep[-1]]) > tol:
            keep.append(i)
    if len(keep) > 1 and np.linalg.norm(cycle[keep[-1]] - cycle[keep[0]]) <= tol:
        keep.pop()
    return cycle[keep]


def collapse_duplicates(points, tol: float = DUPLICATE_TOL) -> tuple[np.ndarray, tuple]:
    """Drop points within ``tol`` (chordal) of an earlier point."""
    x = as_points(points)
    keep, dropped = [], []
    for i in range(x.shape[0]):
        if keep and np.min(np.linalg.norm(x[keep] - x[i], axis=1)) <= tol:
            dropped.append(i)
        else:
            keep.append(i)
    return x[keep], tuple(dropped)


def tessellate(code, tol: float = ORIENT_EPS) -> SphericalTessellation:
    """Spherical Delaunay/Voronoi structure of a point set on S^2.

    The Delaunay triangles are the facets of the convex hull of the points;
    their outward unit normals are the circumcenters (Voronoi vertices).
    The origin must lie strictly inside the hull, otherwise some Voronoi cell
    is unbounded in the sense that the points fit in a closed hemisphere.
    Cospherical groups of four or more points come out triangulated.
    """
    pts = code.points if isinstance(code, SphericalCode) else as_points(code)
    if pts.shape[1] != 3:
        raise GeometryError("tessellation is implemented on S^2 only")
    pts, dropped = collapse_duplicates(pts)
    if pts.shape[0] < 4:
        raise GeometryError("need at least four distinct points")
    if np.linalg.matrix_rank(pts, tol=1e-9) < 3:
        raise GeometryError("points span fewer than three dimensions")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:  # pragma: no cover - rank check catches most
        raise GeometryError(f"convex hull failed: {exc}") from exc
    if len(hull.vertices) != pts.shape[0]:
        raise GeometryError("some points are not hull vertices")

    # qhull's outward normals orient the facets; a facet plane through or
    # behind the origin means the points fit in a closed hemisphere
    if np.any(-hull.equations[:, 3] <= tol):
        raise GeometryError("points fit in a closed hemisphere; Voronoi cells are unbounded")
    tris = []
    centers = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        a, b, c = pts[simplex]
        if float(np.cross(b - a, c - a) @ eq[:3]) < 0.0:
            simplex = simplex[[0, 2, 1]]
        tris.append(simplex)
        centers.append(circumcenter(*pts[simplex]))
    tris = np.asarray(tris, dtype=int)
    centers = np.asarray(centers)

    rings = _rings(tris, pts.shape[0])
    code = SphericalCode(pts)
    return SphericalTessellation(code, tris, centers, tuple(tuple(r) for r in rings), dropped)


def _rings(tris: np.ndarray, n: int) -> list[list[int]]:
    """For each vertex, its incident triangles in counterclockwise order."""
    nxt = [dict() for _ in range(n)]
    for k, (a, b, c) in enumerate(tris):
        for i, j, l in ((a, b, c), (b, c, a), (c, a, b)):
            nxt[i][j] = (l, k)
    rings = []
    for i in range(n):
        if not nxt[i]:
            raise GeometryError(f"vertex {i} has no incident triangles")
        start = min(nxt[i])
        ring, j = [], start
        for _ in range(len(nxt[i])):
            j, k = nxt[i][j]
            ring.append(k)
            if j == start:
                break
        if len(ring) != len(nxt[i]) or j != start:
            raise GeometryError(f"triangles around vertex {i} do not close up")
        rings.append(ring)
    return rings


def platonic_vertices(name: str) -> np.ndarray:
    """Unit vertex directions of a Platonic solid, from exact coordinates."""
    s = [-1.0, 1.0]
    if name == "tetrahedron":
        v = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif name == "octahedron":
        v = [tuple(sg * (i == k) for k in range(3)) for i in range(3) for sg in s]
    elif name == "cube":
        v = [(a, b, c) for a in s for b in s for c in s]
    elif name == "icosahedron":
        v = []
        for a in s:
            for b in s:
                p = (0.0, a, b * GOLDEN)
                v += [p, (p[2], p[0], p[1]), (p[1], p[2], p[0])]
    elif name == "dodecahedron":
        v = [(a, b, c) for a in s for b in s for c in s]
        for a in s:
            for b in s:
                p = (0.0, a / GOLDEN, b * GOLDEN)
                v += [p, (p[2], p[0], p[1]), (p[1], p[2], p[0])]
    else:
        raise ValueError(f"unknown solid {name!r}")
    return as_points(v)


# the tangency points of a solid circumscribed about the unit sphere are the
# vertex directions of its polar dual
DUAL_SOLID = {
    "tetrahedron": "tetrahedron",
    "cube": "octahedron",
    "octahedron": "cube",
    "dodecahedron": "icosahedron",
    "icosahedron": "dodecahedron",
}


def solid_tangency_points(name: str) -> np.ndarray:
    """Face-tangency directions of the named solid circumscribed about S^2."""
    if name not in DUAL_SOLID:
        raise ValueError(f"unknown solid {name!r}")
    x = platonic_vertices(DUAL_SOLID[name])
    return -x if name == "tetrahedron" else x


def random_points(n: int, d: int = 3, rng=None) -> np.ndarray:
    """``n`` uniform points on S^{d-1} (normalized Gaussians)."""
    rng = np.random.default_rng(rng)
    return as_points(rng.standard_normal((n, d)))
