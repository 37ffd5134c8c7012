"""Polyhedra circumscribed about the unit sphere and their isoperimetric quotient.

A set of tangency points ``x_i`` on S^{d-1} defines the body
``{p : p . x_i <= 1 for all i}``; every facet touches the sphere, so the
cone decomposition from the origin gives ``V = F / d``. For d = 3 this
module also relates the facets to the spherical Voronoi/Delaunay structure
of the tangency points through the central projection, and evaluates the
lifted area ``rho(t)`` of a regular spherical triangle (exactly) or simplex
(by Monte Carlo).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from scipy.special import betainc, comb, gamma, ndtr

from .bounds import goldberg_ft_rhs
from .geom import (
    GeometryError,
    SphericalCode,
    as_points,
    collapse_duplicates,
    project_to_tangent,
    regular_triangle_side,
    spherical_triangle_area,
    tessellate,
)
from .quadrature import integrate_triangle

PLANE_TOL = 1e-9
VERTEX_MERGE_TOL = 1e-9


@dataclass(frozen=True)
class CircumscribedPolyhedron:
    """Convex body whose facets are tangent to the unit sphere.

    ``faces[i]`` lists vertex indices of the facet touching at
    ``tangency.points[i]`` (counterclockwise from outside when d = 3).
    ``volume_check`` is the volume recomputed without assuming the facets
    sit at distance 1 (divergence theorem with each facet's own normal and
    offset for d = 3, qhull otherwise).
    """

    tangency: SphericalCode
    vertices: np.ndarray
    faces: tuple
    face_areas: np.ndarray
    surface_area: float
    volume: float
    volume_check: float

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_edges(self) -> int:
        if self.dimension != 3:
            raise NotImplementedError("edge count is only tracked for d = 3")
        edges = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                edges.add((min(a, b), max(a, b)))
        return len(edges)


def _hull_planes(x: np.ndarray):
    """Facets of conv(x) merged by supporting plane: (normals, offsets, members)."""
    try:
        hull = ConvexHull(x)
    except QhullError as exc:
        raise GeometryError(f"degenerate tangency set: {exc}") from exc
    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    if np.any(offsets <= PLANE_TOL):
        raise GeometryError("tangency points fit in a closed hemisphere: the body is unbounded")
    groups: list[list[int]] = []
    reps: list[np.ndarray] = []
    for k in range(len(normals)):
        key = normals[k] / offsets[k]
        for g, r in zip(groups, reps):
            if np.linalg.norm(r - key) <= VERTEX_MERGE_TOL * max(1.0, np.linalg.norm(key)):
                g.append(k)
                break
        else:
            groups.append([k])
            reps.append(key)
    members = [sorted({int(i) for k in g for i in hull.simplices[k]}) for g in groups]
    return hull, groups, members


def circumscribe(points) -> CircumscribedPolyhedron:
    """Build the polyhedron tangent to the unit sphere at ``points``.

    Vertices are intersections of the tangent planes of the tangency points
    sharing a hull facet (least squares when more than d share one).
    Raises GeometryError when the intersection of half-spaces is unbounded.
    """
    code = points if isinstance(points, SphericalCode) else SphericalCode(points)
    x, dropped = collapse_duplicates(code.points)
    if dropped:
        raise GeometryError(f"duplicate tangency points at indices {dropped}")
    n, d = x.shape
    if n < d + 1:
        raise GeometryError(f"need at least {d + 1} tangency points in dimension {d}")
    if np.linalg.matrix_rank(x, tol=1e-9) < d:
        raise GeometryError("tangency points do not span the space")
    hull, groups, members = _hull_planes(x)
    if len(hull.vertices) != n:
        raise GeometryError("some tangency points lie inside the hull (redundant facets)")

    verts = np.array([np.linalg.lstsq(x[m], np.ones(len(m)), rcond=None)[0] for m in members])

    if d == 3:
        return _circumscribe_3d(code, x, hull, groups, verts)

    incident = [[] for _ in range(n)]
    for j, m in enumerate(members):
        for i in m:
            incident[i].append(j)
    vhull = ConvexHull(verts)
    F, V = float(vhull.area), float(vhull.volume)
    face_areas = np.full(n, np.nan)
    return CircumscribedPolyhedron(code, verts, tuple(tuple(f) for f in incident), face_areas,
                                   F, F / d, V)


def _circumscribe_3d(code, x, hull, groups, verts):
    n = x.shape[0]
    simplex_group = np.empty(len(hull.simplices), dtype=int)
    for g, ks in enumerate(groups):
        simplex_group[ks] = g
    # orient simplices counterclockwise from outside, then walk the ring of
    # facets around every tangency point
    nxt = [dict() for _ in range(n)]
    for k, s in enumerate(hull.simplices):
        a, b, c = (int(i) for i in s)
        if np.linalg.det(x[[a, b, c]]) < 0:
            b, c = c, b
        for i, j, l in ((a, b, c), (b, c, a), (c, a, b)):
            nxt[i][j] = (l, simplex_group[k])
    faces = []
    for i in range(n):
        start = min(nxt[i])
        ring, j = [], start
        while True:
            j, g = nxt[i][j]
            if not ring or ring[-1] != g:
                ring.append(int(g))
            if j == start:
                break
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring.pop()
        faces.append(tuple(ring))

    areas = np.empty(n)
    vol_div = 0.0
    for i, f in enumerate(faces):
        p = verts[list(f)]
        newell = np.cross(p, np.roll(p, -1, axis=0)).sum(axis=0)
        areas[i] = 0.5 * float(x[i] @ newell)
        nrm = newell / np.linalg.norm(newell)
        offset = float(p.mean(axis=0) @ nrm)
        vol_div += offset * 0.5 * np.linalg.norm(newell) / 3.0
    F = float(areas.sum())
    return CircumscribedPolyhedron(code, verts, tuple(faces), areas, F, F / 3.0, vol_div)


def omega_sphere(d: int) -> float:
    """Surface area of the unit sphere S^{d-1} in R^d."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return 2.0 * math.pi ** (d / 2.0) / gamma(d / 2.0)


def iq(P: CircumscribedPolyhedron, check: float = 1e-9) -> float:
    """Isoperimetric quotient ``d^{d-1} Omega_d V^{d-1} / F^d``.

    For a circumscribed body this equals ``Omega_d / F``; both forms are
    computed and must agree to ``check`` (relative).
    """
    d = P.dimension
    F, V = P.surface_area, P.volume_check
    general = d ** (d - 1) * omega_sphere(d) * V ** (d - 1) / F ** d
    short = omega_sphere(d) / F
    if abs(general - short) > check * short:
        raise GeometryError(f"IQ paths disagree: {general!r} vs {short!r}")
    return general


def centroid_defect(P: CircumscribedPolyhedron) -> float:
    """Largest distance between a facet's centroid and its tangency point (d = 3).

    Zero for bodies that satisfy the centroid-tangency condition of
    IQ-extremal polyhedra.
    """
    if P.dimension != 3:
        raise NotImplementedError
    worst = 0.0
    for i, f in enumerate(P.faces):
        x = P.tangency.points[i]
        p = P.vertices[list(f)]
        cent = np.zeros(3)
        tot = 0.0
        for k in range(1, len(p) - 1):
            a = 0.5 * float(x @ np.cross(p[k] - p[0], p[k + 1] - p[0]))
            cent += a * (p[0] + p[k] + p[k + 1]) / 3.0
            tot += a
        worst = max(worst, float(np.linalg.norm(cent / tot - x)))
    return worst


# -- central projection identities (d = 3) ----------------------------------

@dataclass(frozen=True)
class ProjectionReport:
    """Checks of the central projection between a body and its insphere."""

    voronoi_areas: np.ndarray
    delaunay_areas: np.ndarray
    projected_vertex_match: float
    equidistance_spread: float
    face_area_sum_check: float
    delaunay_area_sum_check: float
    preimage_areas: np.ndarray
    preimage_area_sum: float
    face_preimage_mismatch: float


def _clip(poly: list[np.ndarray], normal: np.ndarray) -> list[np.ndarray]:
    """Clip a spherical polygon to the hemisphere ``normal . y >= 0``."""
    out = []
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        sa, sb = float(normal @ a), float(normal @ b)
        if sa >= 0.0:
            out.append(a)
        if (sa >= 0.0) != (sb >= 0.0):
            y = abs(sa) * b + abs(sb) * a
            out.append(y / np.linalg.norm(y))
    return out


def _sec3_integral(poly: list[np.ndarray], site: np.ndarray, tol: float) -> float:
    """Integral of ``sec^3`` of the angle to ``site`` over a convex spherical polygon.

    Each fan triangle is parametrized by its flat chordal triangle, where
    ``dsigma = h dA / |p|^3`` turns the integrand into ``h / (p . site)^3``.
    """
    total = 0.0
    a = poly[0]
    for b, c in zip(poly[1:-1], poly[2:]):
        nrm = np.cross(b - a, c - a)
        nn = np.linalg.norm(nrm)
        if nn < 1e-15:
            continue
        h = abs(float(a @ nrm)) / nn

        def f(p, h=h):
            return h / (p @ site) ** 3

        v, _ = integrate_triangle(f, a, b, c, tol=tol)
        total += v
    return total


def _polygon_area(poly) -> float:
    if len(poly) < 3:
        return 0.0
    a = poly[0]
    return sum(spherical_triangle_area(a, b, c) for b, c in zip(poly[1:-1], poly[2:]))


def projection_report(P: CircumscribedPolyhedron, tol: float = 1e-13) -> ProjectionReport:
    """Project faces and vertices of ``P`` to the sphere and check the identities.

    * projected vertices coincide with the Voronoi vertices (circumcenters
      of Delaunay cells) of the tangency points;
    * Voronoi and Delaunay areas each sum to 4 pi;
    * the lifted Delaunay cells tile the surface: summing
      ``int sec^3`` over every cell piece (computed by adaptive triangle
      quadrature) recovers ``F``, and grouping the same pieces by site
      recovers each planar face area.
    """
    if P.dimension != 3:
        raise NotImplementedError("projection identities are implemented for d = 3")
    x = P.tangency.points
    tess = tessellate(P.tangency)
    centers = tess.circumcenters

    proj = P.vertices / np.linalg.norm(P.vertices, axis=1)[:, None]
    chord = np.linalg.norm(proj[:, None, :] - centers[None, :, :], axis=-1)
    d1 = 2.0 * np.arcsin(np.clip(chord / 2.0, 0.0, 1.0))
    match = max(float(d1.min(axis=1).max()), float(d1.min(axis=0).max()))

    spread = 0.0
    for j, p in enumerate(P.vertices):
        owners = [i for i, f in enumerate(P.faces) if j in f]
        dists = np.linalg.norm(x[owners] - p, axis=1)
        expect = math.sqrt(max(float(p @ p) - 1.0, 0.0))
        spread = max(spread, float(np.max(np.abs(dists - expect))))

    vor = tess.voronoi_areas()
    dela = tess.delaunay_areas()
    nbrs = tess.neighbors()
    radii = tess.circumradii

    pieces = np.zeros((len(tess.delaunay), x.shape[0]))
    for k, tri in enumerate(tess.delaunay):
        poly0 = [x[i] for i in tri]
        cand = np.nonzero(x @ centers[k] >= math.cos(min(math.pi, 3.0 * radii[k])) - 1e-12)[0]
        covered = 0.0
        for s in cand:
            poly = poly0
            for j in nbrs[s]:
                poly = _clip(poly, x[s] - x[j])
                if len(poly) < 3:
                    break
            if len(poly) < 3:
                continue
            covered += _polygon_area(poly)
            pieces[k, s] = _sec3_integral(poly, x[s], tol)
        if abs(covered - dela[k]) > 1e-9 * max(1.0, dela[k]):
            raise GeometryError(f"Voronoi pieces do not cover Delaunay cell {k}")

    pre = pieces.sum(axis=1)
    per_face = pieces.sum(axis=0)
    mismatch = float(np.max(np.abs(per_face - P.face_areas) / P.face_areas))
    return ProjectionReport(
        voronoi_areas=vor,
        delaunay_areas=dela,
        projected_vertex_match=match,
        equidistance_spread=spread,
        face_area_sum_check=abs(float(vor.sum()) - 4.0 * math.pi),
        delaunay_area_sum_check=abs(float(dela.sum()) - 4.0 * math.pi),
        preimage_areas=pre,
        preimage_area_sum=float(pre.sum()),
        face_preimage_mismatch=mismatch,
    )


# -- lifted regular triangles and simplices --------------------------------

def rho(t: float) -> float:
    """Area of the central-projection lift of a regular spherical triangle of area ``t``.

    Each of the three vertices ``x`` owns a kite in its tangent plane with
    corners at ``x`` and the projections of the two adjacent edge midpoints
    and of the circumcenter.
    """
    if not 0.0 < t < 2.0 * math.pi:
        raise ValueError(f"area {t!r} outside (0, 2pi)")
    phi = regular_triangle_side(t)
    # vertices symmetric about e3 at polar angle r (the circumradius)
    cos_r = math.sqrt((1.0 + 2.0 * math.cos(phi)) / 3.0)
    sin_r = math.sqrt(max(0.0, 1.0 - cos_r * cos_r))
    verts = [np.array([sin_r * math.cos(a), sin_r * math.sin(a), cos_r])
             for a in (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)]
    x1, x2, x3 = verts
    q = np.array([0.0, 0.0, 1.0])
    m12 = (x1 + x2) / np.linalg.norm(x1 + x2)
    m13 = (x1 + x3) / np.linalg.norm(x1 + x3)
    kite = [x1, project_to_tangent(x1, m12), project_to_tangent(x1, q), project_to_tangent(x1, m13)]
    s = np.zeros(3)
    for a, b in zip(kite, kite[1:] + kite[:1]):
        s += np.cross(a, b)
    return 3.0 * 0.5 * abs(float(x1 @ s))


def lifted_triangle_bound(f: int) -> float:
    """IQ bound ``tau / rho(tau)`` with ``tau = 2 pi / (f - 2)``."""
    if f < 4:
        raise ValueError("f must be at least 4")
    tau = 2.0 * math.pi / (f - 2)
    return tau / rho(tau)


def upper_bound_vertices(d: int, n: int) -> int:
    """Maximum vertex count of a d-polytope with ``n`` facets (Upper Bound Theorem)."""
    if d < 2 or n <= d:
        raise ValueError("need n > d >= 2")
    lo, hi = d // 2, (d + 1) // 2
    return int(comb(n - hi, lo, exact=True) + comb(n - lo - 1, hi - 1, exact=True))


class MonteCarloValue(NamedTuple):
    value: float
    stderr: float
    inner_product: float
    hits: int


def regular_simplex(d: int, c: float) -> np.ndarray:
    """``d`` unit vectors in R^d with pairwise inner products ``c``.

    The simplex is centred on the direction ``(1, ..., 1) / sqrt(d)``.
    """
    if not -1.0 / (d - 1) < c < 1.0:
        raise ValueError("inner product outside the realizable range")
    a = math.sqrt((c * (d - 1) + 1.0) / d)
    b = math.sqrt(max(0.0, 1.0 - a * a))
    u = np.eye(d) - 1.0 / d
    u /= np.linalg.norm(u, axis=1)[:, None]
    return a * np.full((d, d), 1.0 / math.sqrt(d)) + b * u


def simplex_inner_product(d: int, circumradius: float) -> float:
    """Inner product ``c`` of the regular simplex with the given circumradius."""
    return (d * math.cos(circumradius) ** 2 - 1.0) / (d - 1)


MC_SAMPLES = 1_000_000
MC_CHUNK = 100_000
AREA_TOL = 1e-4
GNOMONIC_MAX_RADIUS = 1.3


def _chunked_normals(d: int, samples: int, seed) -> np.ndarray:
    """Standard normals in fixed-size chunks, each from its own spawned seed."""
    nchunks = -(-samples // MC_CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(nchunks)
    out, left = [], samples
    for ss in seqs:
        m = min(MC_CHUNK, left)
        out.append(np.random.default_rng(ss).standard_normal((m, d)))
        left -= m
    return np.concatenate(out)


def _sample(d: int, samples: int, seed, radius: float | None):
    """Points on S^{d-1} with importance weights ``1 / density``.

    With ``radius`` set, points are uniform in the gnomonic image (a ball of
    radius ``tan radius`` in the tangent hyperplane) of the cap around the
    simplex centre; the sphere density there is ``sec^d / vol(ball)``.
    Otherwise points are uniform on the whole sphere.
    """
    g = _chunked_normals(d, samples, seed)
    omega = omega_sphere(d)
    if radius is None:
        return g / np.linalg.norm(g, axis=1)[:, None], np.full(samples, omega)
    center = np.full(d, 1.0 / math.sqrt(d))
    basis = np.linalg.qr(np.column_stack([center, np.eye(d)[:, : d - 1]]))[0][:, 1:]
    m = d - 1
    # uniform in the m-ball: direction from the first m normals, radius from
    # the last coordinate's normal CDF (independent of the direction)
    direc = g[:, :m] / np.linalg.norm(g[:, :m], axis=1)[:, None]
    r = math.tan(radius) * ndtr(g[:, m]) ** (1.0 / m)
    p = center + (direc * r[:, None]) @ basis.T
    y = p / np.linalg.norm(p, axis=1)[:, None]
    ball = math.pi ** (m / 2.0) / gamma(m / 2.0 + 1.0) * math.tan(radius) ** m
    cos_c = y @ center
    return y, ball * cos_c ** d


def _inside(y: np.ndarray, c: float, d: int):
    V = regular_simplex(d, c)
    return np.all(y @ np.linalg.inv(V) >= 0.0, axis=1), V


def _flat_simplex_ratio(d: int) -> float:
    """Volume of a regular (d-1)-simplex inscribed in the unit (d-1)-ball, over the ball's."""
    m = d - 1
    simplex = math.sqrt(m + 1) / math.factorial(m) * ((m + 1) / m) ** (m / 2.0) / math.sqrt(2.0) ** m
    # edge of the simplex inscribed in the unit ball is sqrt(2 (m+1)/m)
    ball = math.pi ** (m / 2.0) / gamma(m / 2.0 + 1.0)
    return simplex * 2.0 ** (m / 2.0) / ball


PILOT_SAMPLES = 100_000
PILOT_MARGIN = 1.05


def _fit(d: int, t: float, samples: int, seed, radius: float | None):
    """Sample around the simplex centre and bisect on its inner product.

    Returns ``(y, w, c, floor, radius)`` where ``floor`` is the smallest
    inner product whose simplex still fits in the sampled cap. The cap is
    widened until the area ``t`` is reachable. One sample serves every
    bisection step.
    """
    while True:
        y, w = _sample(d, samples, seed, radius)
        floor = -1.0 / (d - 1) + 1e-9 if radius is None else simplex_inner_product(d, radius)
        amax = float(w[_inside(y, floor, d)[0]].sum()) / samples
        if amax >= t:
            break
        if radius is None:
            raise ValueError(f"area {t!r} not attained; largest sampled simplex area {amax!r}")
        radius = radius * 1.3 if radius * 1.3 < GNOMONIC_MAX_RADIUS else None

    lo, hi = floor, 1.0 - 1e-12
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if float(w[_inside(y, mid, d)[0]].sum()) / samples >= t:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-11:
            break
    return y, w, lo, floor, radius


def rho_d(d: int, t: float, samples: int = MC_SAMPLES, seed=0,
          area_tol: float = AREA_TOL) -> MonteCarloValue:
    """Monte Carlo lifted area of a regular spherical (d-1)-simplex of area ``t``.

    The simplex's common inner product is found by bisection on a Monte
    Carlo area estimate that reuses one weighted sample throughout (common
    random numbers). The lift integrand is ``sec^d`` of the angle to the
    nearest vertex; the value is ``t`` times its weighted mean over the
    simplex. ``stderr`` combines the sampling error of that mean with the
    error inherited through the bisection target.
    """
    if d < 3:
        raise ValueError("d must be at least 3")
    if samples < 10_000:
        raise ValueError("use at least 10^4 samples")
    omega = omega_sphere(d)
    if not 0.0 < t < omega / 2.0:
        raise ValueError(f"area {t!r} outside the realizable range (0, {omega / 2.0!r})")

    # pilot: a generous cap from the flat-simplex ratio, grown if too small
    ratio = _flat_simplex_ratio(d)
    radius = None
    for R in np.linspace(0.02, GNOMONIC_MAX_RADIUS, 400):
        cap = omega / 2.0 * betainc((d - 1) / 2.0, 0.5, math.sin(R) ** 2)
        if cap * ratio >= 1.5 * t:
            radius = float(R)
            break
    pilot_seed = None if seed is None else [int(seed), 1]
    _, _, c, _, _ = _fit(d, t, min(samples, PILOT_SAMPLES), pilot_seed, radius)

    # the gnomonic image of the simplex is a flat simplex inscribed in the
    # ball of radius tan(circumradius): sample just beyond it
    R = math.acos(math.sqrt(((d - 1) * c + 1.0) / d))
    radius = math.atan(math.tan(R) * PILOT_MARGIN) if R < GNOMONIC_MAX_RADIUS else None
    if radius is not None and radius >= GNOMONIC_MAX_RADIUS:
        radius = None
    y, w, c, floor, radius = _fit(d, t, samples, seed, radius)

    def stats(cc):
        ins, V = _inside(y, cc, d)
        a = w[ins]
        s = (y[ins] @ V.T).max(axis=1) ** (-float(d))
        return ins.sum(), a, s

    hits, a, s = stats(c)
    A = float(a.sum()) / samples
    if hits < 100 or abs(A - t) > area_tol * max(1.0, t):
        raise ArithmeticError(
            f"bisection on the simplex inner product did not converge ({hits} hits, "
            f"area {A!r} for target {t!r}); use more samples")
    B = float((a * s).sum()) / samples
    r = B / A
    full_a = np.zeros(samples)
    full_b = np.zeros(samples)
    ins = _inside(y, c, d)[0]
    full_a[ins] = a
    full_b[ins] = a * s
    se_ratio = t / A * float(np.std(full_b - r * full_a, ddof=1)) / math.sqrt(samples)

    h = 0.02 * (1.0 - c)
    cp, cm = min(c + h, 1.0 - 1e-12), max(c - h, floor)
    _, ap, sp = stats(cp)
    _, am, sm = stats(cm)
    dA = (float(ap.sum()) - float(am.sum())) / samples / (cp - cm)
    dm = (float((ap * sp).sum()) / float(ap.sum()) - float((am * sm).sum()) / float(am.sum())) / (cp - cm)
    se_area = float(np.std(full_a, ddof=1)) / math.sqrt(samples)
    se_c = se_area / abs(dA) if dA != 0.0 else 0.0
    stderr = math.hypot(se_ratio, t * dm * se_c)
    return MonteCarloValue(t * r, stderr, c, int(hits))


class ConjectureRecord(NamedTuple):
    bound_name: str
    lhs: float
    rhs: float
    margin: float
    stderr: float


def conjecture_report(P: CircumscribedPolyhedron, samples: int = MC_SAMPLES, seed=0) -> list[ConjectureRecord]:
    """Evaluate the conjectured higher-dimensional IQ bounds for ``P``.

    Reports IQ(P) against ``Omega_d / (v rho_d(Omega_d / v))`` (vertex form)
    and against ``tau / rho_d(tau)`` with ``tau = Omega_d / h_d(n)``. These
    are conjectures: margins are reported, never enforced. In d = 3 the
    exact ``rho`` is used.
    """
    d = P.dimension
    lhs = iq(P)
    om = omega_sphere(d)
    v, n = P.n_vertices, P.n_faces

    def lifted(t):
        if d == 3:
            return rho(t), 0.0
        r = rho_d(d, t, samples=samples, seed=seed)
        return r.value, r.stderr

    out = []
    for name, t, scale in (("vertex_form", om / v, om / v),
                           ("upper_bound_form", om / upper_bound_vertices(d, n),
                            om / upper_bound_vertices(d, n))):
        r, se = lifted(t)
        rhs = scale / r
        out.append(ConjectureRecord(name, float(lhs), float(rhs), float(rhs - lhs), float(rhs * se / r)))
    return out


def goldberg_margin(P: CircumscribedPolyhedron) -> float:
    """``goldberg_ft_rhs(f) - IQ(P)`` for a 3-dimensional body (non-negative)."""
    return goldberg_ft_rhs(P.n_faces) - iq(P)


def random_admissible(n: int, rng, d: int = 3, max_tries: int = 10_000) -> np.ndarray:
    """Random tangency set whose circumscribed body is bounded."""
    for _ in range(max_tries):
        g = rng.standard_normal((n, d))
        x = as_points(g)
        try:
            hull = ConvexHull(x)
        except QhullError:
            continue
        if np.all(-hull.equations[:, -1] > 1e-6) and len(hull.vertices) == n:
            return x
    raise RuntimeError("no admissible sample found")


__all__ = [
    "CircumscribedPolyhedron",
    "ProjectionReport",
    "circumscribe",
    "iq",
    "projection_report",
    "rho",
    "lifted_triangle_bound",
    "omega_sphere",
    "upper_bound_vertices",
    "rho_d",
    "conjecture_report",
    "centroid_defect",
]
