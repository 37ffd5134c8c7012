"""Numerical integration and interpolation helpers.

Adaptive Simpson for 1-d integrals (with Richardson correction and an
accumulated error bound), barycentric interpolation on Chebyshev points,
and an adaptive rule for smooth integrands over flat triangles in R^3.
"""

from __future__ import annotations

import numpy as np
from scipy.fft import dct


class QuadratureError(ArithmeticError):
    """An adaptive rule failed to reach its tolerance."""


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, rel_tol: float = 0.0,
                     max_depth: int = 40) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson.

    Returns ``(value, error)`` where ``error`` is the sum over accepted
    panels of ``|S_fine - S_coarse| / 15``. The effective tolerance is
    ``max(tol, rel_tol * |I0|)`` with ``I0`` the single-panel estimate,
    so ``rel_tol`` alone (``tol=0``) gives a relative criterion.

    Raises QuadratureError if a panel is still unresolved at ``max_depth``.
    """
    if a == b:
        return 0.0, 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    eps = max(tol, rel_tol * abs(whole))
    if eps <= 0.0:
        eps = 1e-300
    value, err = _simpson_rec(f, a, b, fa, fm, fb, whole, eps, max_depth)
    return value, err


def _simpson_rec(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0, abs(delta) / 15.0
    if depth <= 0:
        raise QuadratureError(f"adaptive Simpson did not converge on [{a!r}, {b!r}]")
    v1, e1 = _simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
    v2, e2 = _simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    return v1 + v2, e1 + e2


def chebyshev_nodes(n: int, a: float, b: float) -> np.ndarray:
    """Chebyshev points of the second kind on ``[a, b]``, ascending."""
    k = np.arange(n)
    x = -np.cos(np.pi * k / (n - 1))
    return 0.5 * (a + b) + 0.5 * (b - a) * x


class ChebyshevInterpolant:
    """Polynomial interpolant through values at Chebyshev points.

    Evaluation uses the barycentric formula with the closed-form weights
    for second-kind points. ``tail`` estimates the truncation error from
    the magnitude of the highest Chebyshev coefficients.
    """

    def __init__(self, a: float, b: float, values):
        self.a, self.b = float(a), float(b)
        self.values = np.asarray(values, dtype=float)
        n = self.values.size
        self.nodes = chebyshev_nodes(n, a, b)
        w = np.ones(n)
        w[1::2] = -1.0
        w[0] *= 0.5
        w[-1] *= 0.5
        self.weights = w
        coeffs = dct(self.values[::-1], type=1) / (n - 1)
        coeffs[0] /= 2.0
        coeffs[-1] /= 2.0
        self.coeffs = coeffs
        self.tail = float(np.max(np.abs(coeffs[-8:]))) * 8.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        diff = x[:, None] - self.nodes[None, :]
        exact = diff == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            q = self.weights / diff
            out = (q @ self.values) / q.sum(axis=1)
        hit = exact.any(axis=1)
        if hit.any():
            out[hit] = self.values[exact[hit].argmax(axis=1)]
        return float(out[0]) if scalar else out


def _collapsed_gauss(order: int):
    """Collapsed Gauss-Legendre rule on the reference triangle.

    Returns barycentric-free coordinates ``(s, t)`` with ``s, t >= 0``,
    ``s + t <= 1`` and weights summing to 1/2; exact for polynomials of
    total degree ``2 * order - 1``.
    """
    g, w = np.polynomial.legendre.leggauss(order)
    g = 0.5 * (g + 1.0)
    w = 0.5 * w
    u, v = np.meshgrid(g, g, indexing="ij")
    wu, wv = np.meshgrid(w, w, indexing="ij")
    s = u.ravel()
    t = (v * (1.0 - u)).ravel()
    weights = (wu * wv * (1.0 - u)).ravel()
    return s, t, weights


_TRI_RULE = _collapsed_gauss(8)


def _area2(e1, e2):
    """Twice the area of triangles spanned by edge vectors (rows)."""
    cx = e1[..., 1] * e2[..., 2] - e1[..., 2] * e2[..., 1]
    cy = e1[..., 2] * e2[..., 0] - e1[..., 0] * e2[..., 2]
    cz = e1[..., 0] * e2[..., 1] - e1[..., 1] * e2[..., 0]
    return np.sqrt(cx * cx + cy * cy + cz * cz)


def _tri_rules(f, tris: np.ndarray) -> np.ndarray:
    """Apply the triangle rule to a stack of triangles, shape ``(k, 3, 3)``."""
    s, t, w = _TRI_RULE
    e1 = tris[:, 1] - tris[:, 0]
    e2 = tris[:, 2] - tris[:, 0]
    pts = tris[:, None, 0] + s[None, :, None] * e1[:, None] + t[None, :, None] * e2[:, None]
    vals = np.asarray(f(pts.reshape(-1, 3)), dtype=float).reshape(len(tris), -1)
    return _area2(e1, e2) * (vals @ w)


def integrate_triangle(f, p0, p1, p2, tol: float = 1e-13, max_depth: int = 30) -> tuple[float, float]:
    """Integrate ``f`` over the flat triangle ``p0 p1 p2`` in R^3.

    ``f`` maps an ``(m, 3)`` array of points to ``m`` values. Triangles are
    split into four by edge midpoints until the split and unsplit rules
    agree; the error budget ``tol * |I0|`` is shared equally among children,
    never going below a roundoff floor proportional to ``|I0|``.
    Returns ``(value, error)``.
    """
    tri = np.array([p0, p1, p2], dtype=float)
    whole = float(_tri_rules(f, tri[None])[0])
    floor = 64.0 * np.finfo(float).eps * abs(whole)
    return _tri_rec(f, tri, whole, tol * abs(whole), floor, max_depth)


def _tri_rec(f, tri, whole, eps, floor, depth):
    p0, p1, p2 = tri
    m01, m12, m20 = 0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)
    kids = np.array([(p0, m01, m20), (m01, p1, m12), (m20, m12, p2), (m01, m12, m20)])
    parts = _tri_rules(f, kids)
    fine = float(parts.sum())
    err = abs(fine - whole)
    if err <= max(eps, floor):
        return fine, err
    if depth <= 0:
        raise QuadratureError("triangle quadrature did not converge")
    val = 0.0
    acc = 0.0
    for k, part in zip(kids, parts):
        v, e = _tri_rec(f, k, float(part), eps / 4.0, floor, depth - 1)
        val += v
        acc += e
    return val, acc


def gauss_legendre(f, a: float, b: float, order: int = 64) -> float:
    """Fixed-order Gauss-Legendre rule (vectorized ``f``)."""
    x, w = np.polynomial.legendre.leggauss(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * float(w @ f(mid + half * x))


__all__ = [
    "QuadratureError",
    "adaptive_simpson",
    "chebyshev_nodes",
    "ChebyshevInterpolant",
    "integrate_triangle",
    "gauss_legendre",
]
