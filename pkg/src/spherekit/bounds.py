"""Packing, covering and isoperimetric bounds on the sphere.

Closed-form bounds (cap packing/covering density, the triangle-area code
bound, the polyhedral isoperimetric bound and two conjectured sharpenings),
the simplex-density code bound computed from a recursively defined family
of integrals, the cap kissing number ``kappa`` and the averaged kissing
number used for one-sided kissing comparisons.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geom import GeometryError, regular_triangle_area
from .quadrature import ChebyshevInterpolant, QuadratureError, adaptive_simpson, chebyshev_nodes

FLOOR_SLACK = 1e-9
KAPPA_SLACK = 1e-9

BOUND_NAMES = ("ft_packing", "ft_covering", "ft_code", "coxeter", "goldberg_ft",
               "ft_vertex_conj", "ft_edge_conj")
METHODS = ("closed_form", "quadrature", "monte_carlo")


@dataclass(frozen=True)
class BoundReport:
    """A bound value together with how it was obtained."""

    name: str
    params: tuple
    value: float
    method: str = "closed_form"
    error_estimate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "error_estimate", float(self.error_estimate))
        if self.name not in BOUND_NAMES:
            raise ValueError(f"unknown bound {self.name!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not self.error_estimate >= 0.0:
            raise ValueError("error estimate must be non-negative")

    @property
    def integer(self) -> int:
        """Integer bound: floor with a small slack for exact integers."""
        return floor_with_slack(self.value)


def floor_with_slack(x: float, slack: float = FLOOR_SLACK) -> int:
    return math.floor(x + slack)


# -- cap packings on S^2 ----------------------------------------------------

def omega_N(N: int) -> float:
    """``N pi / (6N - 12)``: the angle of the regular triangular cell."""
    if N < 3:
        raise ValueError("N must be at least 3")
    return N * math.pi / (6 * N - 12)


def ft_packing_bound(N: int) -> float:
    """Upper bound on the density of ``N`` congruent caps packed on S^2."""
    w = omega_N(N)
    return N / 4.0 * (2.0 - 1.0 / math.sin(w))


def ft_covering_bound(N: int) -> float:
    """Lower bound on the density of a covering of S^2 by ``N`` congruent caps."""
    w = omega_N(N)
    return N / 2.0 * (1.0 - math.cos(w) / (math.sin(w) * math.sqrt(3.0)))


def ft_code_bound(phi: float) -> float:
    """Real-valued bound ``2 pi / Delta(phi) + 2`` on the size of a phi-code in S^2."""
    return 2.0 * math.pi / regular_triangle_area(phi) + 2.0


def tammes_upper_bound(N: int) -> float:
    """Upper bound ``arccos((cot^2 w_N - 1) / 2)`` on the minimum distance of ``N`` points on S^2."""
    w = omega_N(N)
    return math.acos((1.0 / math.tan(w) ** 2 - 1.0) / 2.0)


def cap_density(N: int, radius: float) -> float:
    """Fraction of S^2 covered by ``N`` disjoint caps of angular radius ``radius``."""
    return N * 2.0 * math.pi * (1.0 - math.cos(radius)) / (4.0 * math.pi)


# -- simplex-density bound ---------------------------------------------------

class SchlafliValue(NamedTuple):
    value: float
    error: float
    below_domain: bool = False


CHEB_NODES = 256
SIMPSON_REL_TOL = 1e-13
BETA_SLACK = 1e-12
_THETA3 = 0.5 * math.acos(1.0 / 3.0)


def lower_limit(n: int) -> float:
    """Lower integration limit ``arcsec(n - 1) / 2`` of ``F_n`` (n >= 2)."""
    return 0.5 * math.acos(1.0 / (n - 1))


def beta_of_theta(theta: float) -> float:
    """Solve ``sec 2b = sec 2theta - 2`` for ``b``.

    Written through ``sin^2 b = (1 - 3c) / (2 (1 - 2c))`` with
    ``c = cos 2theta``, and ``1 - 3c = 6 sin(theta + t3) sin(theta - t3)``
    where ``cos 2 t3 = 1/3``, so no precision is lost where ``b`` is small.
    """
    c = math.cos(2.0 * theta)
    if not 1.0 - 2.0 * c > 0.0:
        raise GeometryError(f"sec 2theta - 2 < 1 at theta={theta!r}")
    s2 = 3.0 * math.sin(theta + _THETA3) * math.sin(theta - _THETA3) / (1.0 - 2.0 * c)
    if s2 < 0.0:
        if s2 < -BETA_SLACK:
            raise GeometryError(f"sec 2theta - 2 < 1 at theta={theta!r}")
        s2 = 0.0
    return math.asin(math.sqrt(min(s2, 0.5)))


class _Level:
    """Chebyshev table of ``F_n(lower(n) + u^2)`` for ``u`` in ``[0, U]``."""

    def __init__(self, n: int):
        self.n = n
        self.lo = lower_limit(n)
        self.U = math.sqrt(math.pi / 4.0 - self.lo)
        nodes = chebyshev_nodes(CHEB_NODES, 0.0, self.U)
        g = _integrand(_inner(n - 2), self.lo)
        # absolute floor from the level's overall size: the first panels are
        # tiny and cannot meet a relative criterion of their own
        floor = SIMPSON_REL_TOL * abs(g(self.U)) * self.U / CHEB_NODES
        vals = np.zeros(CHEB_NODES)
        quad_err = 0.0
        acc = 0.0
        for k in range(1, CHEB_NODES):
            v, e = adaptive_simpson(g, nodes[k - 1], nodes[k], tol=floor, rel_tol=SIMPSON_REL_TOL)
            acc += v
            quad_err += e
            vals[k] = acc
        vals *= 2.0 / math.pi
        self.interp = ChebyshevInterpolant(0.0, self.U, vals)
        self.error = (2.0 / math.pi) * quad_err + self.interp.tail + (
            (2.0 / math.pi) * (math.pi / 4.0 - self.lo) * _inner_error(n - 2))

    def __call__(self, alpha: float) -> float:
        if alpha <= self.lo:
            return 0.0
        return self.interp(math.sqrt(alpha - self.lo))


_LEVELS: dict[int, _Level] = {}
_LEVEL_LOCK = threading.RLock()


def _level(n: int) -> _Level:
    with _LEVEL_LOCK:
        if n not in _LEVELS:
            _LEVELS[n] = _Level(n)
        return _LEVELS[n]


def _ONE(a):
    return 1.0


def _inner(n: int):
    """Callable ``F_n`` used inside the recursion (closed forms for n <= 3)."""
    if n <= 1:
        return _ONE
    if n == 2:
        return lambda a: 2.0 * a / math.pi
    if n == 3:
        return lambda a: max(0.0, 2.0 / math.pi * (a - math.pi / 6.0))
    return _level(n)


def _inner_error(n: int) -> float:
    return 0.0 if n <= 3 else _level(n).error


def _integrand(inner, lo):
    # theta = lo + s^2 turns the square-root endpoint behaviour of beta into
    # an analytic integrand in s
    if inner is _ONE:
        return lambda s: 2.0 * s

    def g(s):
        return 2.0 * s * inner(beta_of_theta(lo + s * s))
    return g


def schlafli_F(n: int, alpha: float) -> SchlafliValue:
    """Evaluate ``F_n(alpha)`` of the simplex-density recursion.

    ``F_0 = F_1 = 1`` and ``F_{n+1}(a) = (2/pi) int F_{n-1}(b) dtheta`` from
    ``arcsec(n)/2`` to ``a``, with ``sec 2b = sec 2theta - 2``. The outermost
    integral is done by adaptive Simpson at the requested ``alpha``; inner
    levels come from memoized Chebyshev tables. ``alpha`` at or below the
    lower limit yields 0 with ``below_domain`` set.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not alpha <= math.pi / 4.0:
        raise ValueError("alpha must not exceed pi/4")
    if n <= 1:
        return SchlafliValue(1.0, 0.0)
    lo = lower_limit(n)
    if alpha <= lo:
        return SchlafliValue(0.0, 0.0, True)
    inner = _inner(n - 2)
    val, err = adaptive_simpson(_integrand(inner, lo), 0.0, math.sqrt(alpha - lo),
                                tol=0.0, rel_tol=SIMPSON_REL_TOL)
    scale = 2.0 / math.pi
    err = scale * err + scale * (alpha - lo) * _inner_error(n - 2)
    return SchlafliValue(scale * val, err)


def coxeter_alpha(n: int, phi: float) -> float:
    """``alpha`` with ``sec 2alpha = sec phi + n - 2`` (``pi/4`` at ``phi = pi/2``)."""
    if phi == math.pi / 2.0:
        return math.pi / 4.0
    s = 1.0 / math.cos(phi) + n - 2
    if not (math.cos(phi) > 0.0 and s >= 1.0):
        raise ValueError(f"phi={phi!r} outside the domain for n={n}")
    return 0.5 * math.acos(1.0 / s)


def coxeter_bound(n: int, phi: float) -> BoundReport:
    """Simplex-density bound ``2 F_{n-1}(a) / F_n(a)`` on the size of a phi-code in S^{n-1}."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if not 0.0 < phi <= math.pi / 2.0:
        raise ValueError("phi must lie in (0, pi/2]")
    a = coxeter_alpha(n, phi)
    num = schlafli_F(n - 1, a)
    den = schlafli_F(n, a)
    if den.below_domain or den.value <= 0.0:
        raise QuadratureError("F_n vanished at the requested alpha")
    ratio = 2.0 * num.value / den.value
    err = ratio * (num.error / max(num.value, 1e-300) + den.error / den.value)
    return BoundReport("coxeter", (("n", int(n)), ("phi", float(phi))), ratio, "quadrature", err)


# -- polyhedra --------------------------------------------------------------

def goldberg_ft_rhs(f: int) -> float:
    """Upper bound on IQ of a convex polyhedron with ``f`` faces."""
    if f < 4:
        raise ValueError("f must be at least 4")
    w = omega_N(f)
    return 2.0 * math.pi / math.tan(w) / (3.0 * (f - 2) * (4.0 * math.sin(w) ** 2 - 1.0))


class ConjectureValue(NamedTuple):
    rhs: float
    iq_ceiling: float


def ft_vertex_conjecture_rhs(v: int) -> ConjectureValue:
    """Conjectured lower bound on ``F^3 / V^2`` for ``v`` vertices.

    Evaluator only. ``iq_ceiling = 36 pi / rhs`` is the IQ it would imply.
    """
    if v < 4:
        raise ValueError("v must be at least 4")
    w = omega_N(v)
    rhs = 27.0 * math.sqrt(3.0) / 2.0 * (v - 2) * (3.0 * math.tan(w) ** 2 - 1.0)
    return ConjectureValue(rhs, 36.0 * math.pi / rhs)


def ft_edge_conjecture_rhs(f: int, v: int, e: int) -> ConjectureValue:
    """Conjectured lower bound on ``F^3 / V^2`` from face, vertex and edge counts.

    ``p = 2e/f`` and ``q = 2e/v`` are the mean face size and vertex degree.
    """
    if e < 6:
        raise ValueError("e must be at least 6")
    if v - e + f != 2:
        raise ValueError(f"Euler relation violated: {v} - {e} + {f} != 2")
    p, q = 2.0 * e / f, 2.0 * e / v
    rhs = 9.0 * e * math.sin(2.0 * math.pi / p) * (
        math.tan(math.pi / p) ** 2 * math.tan(math.pi / q) ** 2 - 1.0)
    return ConjectureValue(rhs, 36.0 * math.pi / rhs)


# -- kissing numbers ----------------------------------------------------------

def kappa(d: float, slack: float = KAPPA_SLACK) -> int:
    """Number of congruent caps of diameter ``d`` that can touch one more.

    Neighbours sit on the circle of radius ``d`` around the central cap and
    need an azimuthal gap ``2 arcsin(sin(d/2) / sin d)``. Valid for
    ``0 < d <= 2 pi/3``.
    """
    if not 0.0 < d <= 2.0 * math.pi / 3.0 + 1e-15:
        raise ValueError(f"cap diameter {d!r} outside (0, 2pi/3]")
    ratio = min(1.0, math.sin(d / 2.0) / math.sin(d))
    return math.floor(math.pi / math.asin(ratio) + slack)


@dataclass
class KissingTable:
    """Kissing numbers ``k(n)`` with a provenance tag per entry."""

    entries: dict

    @classmethod
    def default(cls) -> "KissingTable":
        return cls({1: (2, "exact"), 2: (6, "exact"), 3: (12, "exact"), 4: (24, "exact")})

    def add(self, n: int, k: int, provenance: str = "bound") -> None:
        if provenance not in ("exact", "bound"):
            raise ValueError("provenance must be 'exact' or 'bound'")
        self.entries[int(n)] = (int(k), provenance)

    def __getitem__(self, n: int) -> int:
        return self.entries[n][0]

    def __contains__(self, n: int) -> bool:
        return n in self.entries


def kbar(table: KissingTable, n: int) -> float:
    """``(k(n-1) + k(n)) / 2``."""
    missing = [m for m in (n - 1, n) if m not in table]
    if missing:
        raise KeyError(f"kissing table lacks dimension(s) {missing}")
    return (table[n - 1] + table[n]) / 2.0
