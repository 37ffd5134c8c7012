"""Contact graphs of point sets on S^2.

The contact graph joins two points when their angular distance equals the
minimum distance of the set (within a tolerance). On S^2 such a graph is
embedded without crossings, so its faces can be read off from the cyclic
order of neighbours around each vertex.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .bounds import kappa
from .geom import SphericalCode, pairwise_angles

CONTACT_TOL = 1e-6
MAXIMAL_PACKING_SIZES = frozenset({2, 3, 4, 6, 8, 9, 12, 24, 48, 60, 120})


class ContactError(ValueError):
    """A contact graph is malformed or lacks the requested structure."""


@dataclass(frozen=True)
class ContactGraph:
    """Contact graph of a spherical code.

    Attributes
    ----------
    vertices : SphericalCode
    edges : tuple of (i, j) with i < j, sorted
    contact_distance : float
        Distance defining a contact, ``psi`` of the code unless given.
    tolerance : float
    faces : tuple of tuples or None
        Index cycles of the embedded faces; None when the graph is
        disconnected or the points are not on S^2.
    min_edge, max_edge : float
        Extreme edge lengths, for auditing near-misses (nan without edges).
    """

    vertices: SphericalCode
    edges: tuple
    contact_distance: float
    tolerance: float
    faces: tuple | None
    min_edge: float = math.nan
    max_edge: float = math.nan
    adjacency: tuple = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.vertices.n

    @property
    def connected(self) -> bool:
        return _connected(self.adjacency)

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency])


def _connected(adj) -> bool:
    n = len(adj)
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _rotation_system(x: np.ndarray, adj) -> list[list[int]]:
    """Neighbours of each vertex in counterclockwise order seen from outside."""
    out = []
    for i, nbrs in enumerate(adj):
        if len(nbrs) < 2:
            out.append(list(nbrs))
            continue
        p = x[i]
        ref = np.eye(3)[int(np.argmin(np.abs(p)))]
        e1 = ref - (ref @ p) * p
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(p, e1)
        v = x[list(nbrs)]
        az = np.arctan2(v @ e2, v @ e1)
        out.append([nbrs[k] for k in np.argsort(az, kind="stable")])
    return out


def _trace_faces(rot) -> tuple:
    """Orbits of darts under ``(u, v) -> (v, w)``, ``w`` preceding ``u`` around ``v``."""
    pos = [{u: k for k, u in enumerate(r)} for r in rot]
    used = set()
    faces = []
    for u in range(len(rot)):
        for v in rot[u]:
            if (u, v) in used:
                continue
            cycle = []
            a, b = u, v
            while (a, b) not in used:
                used.add((a, b))
                cycle.append(a)
                r = rot[b]
                c = r[(pos[b][a] - 1) % len(r)]
                a, b = b, c
            faces.append(tuple(cycle))
    return tuple(faces)


def build_contact_graph(X, tol: float = CONTACT_TOL, contact_distance: float | None = None) -> ContactGraph:
    """Contact graph of ``X`` at tolerance ``tol``.

    Edges are the pairs whose distance is within ``tol`` of
    ``contact_distance`` (default: the minimum distance of ``X``). Raises
    ContactError if a pair is closer than ``contact_distance - tol``, or,
    on S^2, if the graph has more than ``3N - 6`` edges or the traced faces
    fail Euler's relation (either means the edges cross).
    """
    code = X if isinstance(X, SphericalCode) else SphericalCode(X)
    if code.n < 2:
        raise ContactError("a contact graph needs at least 2 points")
    if not tol > 0.0:
        raise ContactError("tolerance must be positive")
    x = code.points
    D = pairwise_angles(x)
    d = code.psi if contact_distance is None else float(contact_distance)
    iu, ju = np.triu_indices(code.n, 1)
    dist = D[iu, ju]
    if dist.min() < d - tol:
        raise ContactError(f"pair closer than contact distance: {dist.min()!r} < {d!r} - {tol!r}")
    close = np.abs(dist - d) <= tol
    edges = tuple((int(i), int(j)) for i, j in zip(iu[close], ju[close]))
    n = code.n
    if code.dimension == 3 and n >= 3 and len(edges) > 3 * n - 6:
        raise ContactError(f"{len(edges)} edges exceed the planar limit {3 * n - 6}")
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    adj = tuple(tuple(a) for a in adj)
    faces = None
    if code.dimension == 3 and _connected(adj):
        faces = _trace_faces(_rotation_system(x, adj))
        if n - len(edges) + len(faces) != 2:
            raise ContactError("traced faces violate Euler's relation; tolerance too loose?")
    lengths = dist[close]
    return ContactGraph(
        code, edges, d, float(tol), faces,
        float(lengths.min()) if lengths.size else math.nan,
        float(lengths.max()) if lengths.size else math.nan,
        adj,
    )


def edge_count(G: ContactGraph) -> int:
    """Number of contacts ``e(X)``."""
    return len(G.edges)


def is_maximal_packing(G: ContactGraph) -> bool:
    """Whether every cap touches the largest possible number of others.

    True iff ``2 e = N kappa(d)``. Two points are treated separately (one
    contact is the maximum). Warns when the test passes for an ``N`` at
    which no such packing can exist.
    """
    n = G.n
    if n == 2:
        return edge_count(G) == 1
    d = G.contact_distance
    if not 0.0 < d <= 2.0 * math.pi / 3.0 + 1e-12:
        return False
    result = 2 * edge_count(G) == n * kappa(min(d, 2.0 * math.pi / 3.0))
    if result and n not in MAXIMAL_PACKING_SIZES:
        warnings.warn(f"maximal packing reported for N={n}, which admits none; "
                      "check the contact tolerance", RuntimeWarning, stacklevel=2)
    return result


def irreducible_by_faces(G: ContactGraph) -> bool:
    """Sufficient test for irreducibility: every face is a triangle or quadrilateral.

    False means only that the test does not apply. Raises ContactError
    when faces are unavailable (disconnected graph).
    """
    if G.faces is None:
        raise ContactError("face structure unavailable: contact graph is disconnected")
    return all(len(f) in (3, 4) for f in G.faces)


def irreducible_by_count(G: ContactGraph) -> bool:
    """Sufficient test for irreducibility: ``N > 6`` and ``e >= 3N - 8``."""
    return G.n > 6 and edge_count(G) >= 3 * G.n - 8


__all__ = [
    "CONTACT_TOL",
    "MAXIMAL_PACKING_SIZES",
    "ContactError",
    "ContactGraph",
    "build_contact_graph",
    "edge_count",
    "is_maximal_packing",
    "irreducible_by_faces",
    "irreducible_by_count",
]
