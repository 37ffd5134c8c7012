"""Seeded max-min optimization of point sets on S^2.

All searches share one pattern: many independent restarts, each a
gradient ascent on a smooth surrogate, run as a batch in numpy; the best
few are then polished by sequential linear programming on the exact
minimum distance and the winner is chosen by ``(psi, restart index)``.

Restart ``k`` draws its start from a generator seeded with
``restart_seed(master_seed, k)``, so results do not depend on how the
restarts are split into blocks or threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import least_squares, linprog

from .bounds import kappa, tammes_upper_bound
from .contacts import ContactError, build_contact_graph, edge_count
from .geom import SphericalCode, pairwise_angles

MODES = ("free", "antipodal", "hemisphere", "max_contacts")
BLOCK = 25
SIN_FLOOR = 1e-4
FEASIBILITY_TOL = 1e-8
POLE = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class OptimizerConfig:
    """Search budget and schedules.

    ``threads`` only changes how restart blocks are scheduled, never the
    result. ``polish`` is the number of best surrogate restarts that get
    the exact polish.
    """

    restarts: int = 200
    iterations_per_restart: int = 5000
    master_seed: int = 0
    softmin_beta_schedule: tuple = (50.0, 200.0, 1000.0, 5000.0)
    step_schedule: tuple = (1e-2, 3e-3, 1e-3, 3e-4)
    convergence_tol: float = 1e-10
    polish: int = 8
    threads: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.iterations_per_restart < 0:
            raise ValueError("iterations_per_restart must be non-negative")
        if not self.softmin_beta_schedule or not self.step_schedule:
            raise ValueError("schedules must be nonempty")
        if any(b <= 0 for b in self.softmin_beta_schedule):
            raise ValueError("softmin beta values must be positive")
        if any(s <= 0 for s in self.step_schedule):
            raise ValueError("step sizes must be positive")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.polish < 1 or self.threads < 1:
            raise ValueError("polish and threads must be at least 1")
        object.__setattr__(self, "softmin_beta_schedule", tuple(float(b) for b in self.softmin_beta_schedule))
        object.__setattr__(self, "step_schedule", tuple(float(s) for s in self.step_schedule))

    @property
    def stages(self) -> list[tuple[float, float]]:
        """``(beta, step)`` per stage; the shorter schedule repeats its last entry."""
        b, s = self.softmin_beta_schedule, self.step_schedule
        k = max(len(b), len(s))
        return [(b[min(i, len(b) - 1)], s[min(i, len(s) - 1)]) for i in range(k)]


@dataclass(frozen=True)
class TammesResult:
    """Outcome of a search.

    ``certificate`` is an upper bound for the optimized quantity (a
    distance, or a contact count in ``max_contacts`` mode) when one is
    available. ``contacts`` and ``contact_distance`` are set in
    ``max_contacts`` mode.
    """

    code: SphericalCode
    psi: float
    mode: str
    best_restart: int
    certificate: float | None = None
    contacts: int | None = None
    contact_distance: float | None = None
    surrogate_psi: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if abs(self.psi - self.code.psi) > 1e-12:
            raise ValueError("psi does not match the code's minimum distance")


# -- seeds ---------------------------------------------------------------------

_MASK64 = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def restart_seed(master_seed: int, index: int) -> int:
    """Seed of restart ``index``: ``splitmix64(splitmix64(master_seed) ^ index)``."""
    return _splitmix64(_splitmix64(int(master_seed) & _MASK64) ^ int(index))


# -- problem shapes ----------------------------------------------------------------

class _Shape:
    """Maps ``m`` free points to the full set and gradients back.

    ``sign`` and ``rep`` give full point ``k`` as ``sign[k] * free[rep[k]]``.
    """

    def __init__(self, m: int, antipodal: bool = False, hemisphere: bool = False):
        self.m = m
        self.antipodal = antipodal
        self.hemisphere = hemisphere
        if antipodal:
            self.rep = np.concatenate([np.arange(m), np.arange(m)])
            self.sign = np.concatenate([np.ones(m), -np.ones(m)])
        else:
            self.rep = np.arange(m)
            self.sign = np.ones(m)
        n = self.rep.size
        mask = ~np.eye(n, dtype=bool)
        if antipodal:
            mask[np.arange(m), np.arange(m) + m] = False
            mask[np.arange(m) + m, np.arange(m)] = False
        self.mask = mask

    @property
    def n(self) -> int:
        return self.rep.size

    def expand(self, Y: np.ndarray) -> np.ndarray:
        return self.sign[:, None] * Y[..., self.rep, :]

    def reduce(self, g: np.ndarray) -> np.ndarray:
        if not self.antipodal:
            return g
        return g[..., : self.m, :] - g[..., self.m:, :]

    def project(self, Y: np.ndarray) -> np.ndarray:
        if self.hemisphere:
            Y = Y.copy()
            Y[..., 2] = np.maximum(Y[..., 2], 0.0)
        return Y / np.linalg.norm(Y, axis=-1, keepdims=True)

    def start(self, rng) -> np.ndarray:
        Y = rng.standard_normal((self.m, 3))
        if self.hemisphere:
            Y[:, 2] = np.abs(Y[:, 2])
        return Y / np.linalg.norm(Y, axis=1, keepdims=True)

    def psi(self, Y: np.ndarray) -> np.ndarray:
        X = self.expand(Y)
        G = np.clip(X @ np.swapaxes(X, -1, -2), -1.0, 1.0)
        D = np.where(self.mask, np.arccos(G), np.inf)
        return D.min(axis=(-1, -2))


def _distance_gradient(X, G, C):
    """``sum_j C_ij grad_{x_i} d(x_i, x_j)`` for a batch, with ``C`` already divided by sin."""
    return -(C @ X) + (C * G).sum(axis=-1)[..., None] * X


def _softmin_ascent(shape: _Shape, Y: np.ndarray, cfg: OptimizerConfig) -> np.ndarray:
    """Gradient ascent on ``-(1/beta) log sum exp(-beta d_ij)`` for a batch ``(B, m, 3)``."""
    stages = cfg.stages
    per_stage = cfg.iterations_per_restart // len(stages)
    mask = shape.mask
    for beta, step in stages:
        for _ in range(per_stage):
            X = shape.expand(Y)
            G = np.clip(X @ np.swapaxes(X, -1, -2), -1.0, 1.0)
            D = np.where(mask, np.arccos(G), np.inf)
            dmin = D.min(axis=(1, 2), keepdims=True)
            W = np.exp(-beta * (D - dmin))
            W /= W.sum(axis=(1, 2), keepdims=True)
            S = np.maximum(np.sqrt(1.0 - G * G), SIN_FLOOR)
            g = shape.reduce(_distance_gradient(X, G, W / S))
            gmax = np.linalg.norm(g, axis=-1).max(axis=-1)[:, None, None]
            Y = shape.project(Y + step * g / np.maximum(gmax, 1e-300))
    return Y


def _tangent_bases(Y: np.ndarray) -> np.ndarray:
    """Orthonormal tangent basis ``(m, 2, 3)`` at each point."""
    ref = np.eye(3)[np.argmin(np.abs(Y), axis=1)]
    e1 = ref - (ref * Y).sum(axis=1)[:, None] * Y
    e1 /= np.linalg.norm(e1, axis=1)[:, None]
    e2 = np.cross(Y, e1)
    return np.stack([e1, e2], axis=1)


def _slp_polish(shape: _Shape, Y: np.ndarray, tol: float, radius: float = 1e-2,
                max_iter: int = 400) -> np.ndarray:
    """Maximize the exact minimum distance by sequential linear programming.

    Each step linearizes every pair that can become active within the trust
    region and solves for tangent moves maximizing the smallest linearized
    distance. Steps that do not raise the true minimum shrink the region.
    """
    n, m = shape.n, shape.m
    psi = float(shape.psi(Y))
    iu, ju = np.nonzero(np.triu(shape.mask))
    for _ in range(max_iter):
        if radius < 1e-13:
            break
        X = shape.expand(Y)
        G = np.clip(X @ X.T, -1.0, 1.0)
        d = np.arccos(G[iu, ju])
        act = d < psi + 3.0 * radius
        i, j, da = iu[act], ju[act], d[act]
        s = np.maximum(np.sqrt(1.0 - G[i, j] ** 2), SIN_FLOOR)
        gi = -(X[j] - G[i, j][:, None] * X[i]) / s[:, None]
        gj = -(X[i] - G[i, j][:, None] * X[j]) / s[:, None]
        T = _tangent_bases(Y)
        rows = np.zeros((act.sum(), 2 * m + 1))
        for k_idx, g_end in ((i, gi), (j, gj)):
            r = shape.rep[k_idx]
            coef = shape.sign[k_idx][:, None, None] * T[r]
            c = (coef @ g_end[:, :, None])[:, :, 0]
            np.add.at(rows, (np.arange(len(r))[:, None], 2 * r[:, None] + np.arange(2)[None, :]), -c)
        rows[:, -1] = 1.0
        A, b = [rows], [da]
        if shape.hemisphere:
            H = np.zeros((m, 2 * m + 1))
            H[np.arange(m)[:, None], 2 * np.arange(m)[:, None] + np.arange(2)[None, :]] = -T[:, :, 2]
            A.append(H)
            b.append(Y[:, 2])
        cost = np.zeros(2 * m + 1)
        cost[-1] = -1.0
        bnds = [(-radius, radius)] * (2 * m) + [(None, None)]
        res = linprog(cost, A_ub=np.vstack(A), b_ub=np.concatenate(b), bounds=bnds, method="highs")
        if res.status != 0:
            radius /= 4.0
            continue
        a = res.x[:-1].reshape(m, 2)
        Ynew = Y + (a[:, :, None] * T).sum(axis=1)
        if shape.hemisphere:
            Ynew[:, 2] = np.maximum(Ynew[:, 2], 0.0)
        Ynew /= np.linalg.norm(Ynew, axis=1)[:, None]
        new = float(shape.psi(Ynew))
        predicted = res.x[-1] - psi
        if new > psi:
            gain = new - psi
            Y, psi = Ynew, new
            if gain > 0.5 * predicted:
                radius = min(2.0 * radius, 0.1)
            if gain < tol and radius < 1e-9:
                break
        else:
            radius /= 4.0
    return Y


def _run_blocks(fn, count: int, threads: int):
    """Apply ``fn(start, stop)`` to fixed blocks of restarts and concatenate."""
    blocks = [(s, min(s + BLOCK, count)) for s in range(0, count, BLOCK)]
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda b: fn(*b), blocks))
    else:
        parts = [fn(*b) for b in blocks]
    return np.concatenate(parts)


def _search(shape: _Shape, cfg: OptimizerConfig):
    """Batch ascent, polish of the leading restarts, and selection."""

    def block(start, stop):
        Y0 = np.stack([shape.start(np.random.default_rng(restart_seed(cfg.master_seed, k)))
                       for k in range(start, stop)])
        return _softmin_ascent(shape, Y0, cfg)

    Ys = _run_blocks(block, cfg.restarts, cfg.threads)
    surrogate = shape.psi(Ys)
    order = sorted(range(cfg.restarts), key=lambda k: (-surrogate[k], k))[: cfg.polish]
    best = None
    for k in order:
        Y = _slp_polish(shape, Ys[k], cfg.convergence_tol)
        psi = float(shape.psi(Y))
        if best is None or psi > best[0]:
            best = (psi, k, Y)
    psi, k, Y = best
    return shape.expand(Y), k, tuple(float(v) for v in surrogate)


def _result(X, k, surrogate, mode, certificate=None, **kw) -> TammesResult:
    code = SphericalCode(X)
    return TammesResult(code, code.psi, mode, int(k), certificate, surrogate_psi=surrogate, **kw)


def tammes_solve(N: int, cfg: OptimizerConfig | None = None) -> TammesResult:
    """Search for ``N`` points on S^2 with the largest minimum distance.

    The certificate is the closed-form upper bound on that distance.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    cfg = cfg or OptimizerConfig()
    X, k, sur = _search(_Shape(N), cfg)
    cert = tammes_upper_bound(N) if N >= 3 else math.pi
    return _result(X, k, sur, "free", cert)


def antipodal_solve(M: int, cfg: OptimizerConfig | None = None) -> TammesResult:
    """Search for ``M`` antipodal pairs with the largest minimum distance.

    Only the ``M`` representatives are free; the mirrored copies enter the
    objective and its gradient. The result holds all ``2M`` points.
    """
    if M < 2:
        raise ValueError("M must be at least 2")
    cfg = cfg or OptimizerConfig()
    X, k, sur = _search(_Shape(M, antipodal=True), cfg)
    return _result(X, k, sur, "antipodal", tammes_upper_bound(2 * M))


def hemisphere_code_search(count: int, target: float,
                           cfg: OptimizerConfig | None = None) -> tuple[TammesResult, bool]:
    """Largest minimum distance of ``count`` points in the closed upper hemisphere.

    Returns the result and whether ``psi >= target - 1e-8``. A missed
    target is a finding of this search, not a proof of infeasibility.
    """
    if count < 2:
        raise ValueError("count must be at least 2")
    if not 0.0 < target < math.pi:
        raise ValueError("target must lie in (0, pi)")
    cfg = cfg or OptimizerConfig()
    X, k, sur = _search(_Shape(count, hemisphere=True), cfg)
    res = _result(X, k, sur, "hemisphere")
    return res, bool(res.psi >= target - FEASIBILITY_TOL)


# -- contact maximization --------------------------------------------------------

CONTACT_SEARCH_EPS = (0.05, 0.02, 0.005, 0.001)
CONTACT_CAPTURE = 5e-3
CONTACT_TOL = 1e-6


def _sticky_ascent(Y: np.ndarray, d: float, iterations: int, steps) -> np.ndarray:
    """Anneal the smoothed contact count under a non-overlap penalty.

    Objective per pair: ``sigmoid((d - s) / eps) - lam max(0, d - s)^2``
    with ``eps`` decreasing through CONTACT_SEARCH_EPS and
    ``lam = 2.5 / eps^2``, which keeps overlaps near ``eps / 20``.
    """
    n = Y.shape[1]
    mask = ~np.eye(n, dtype=bool)
    per = max(1, iterations // len(CONTACT_SEARCH_EPS))
    for stage, eps in enumerate(CONTACT_SEARCH_EPS):
        lam = 2.5 / eps ** 2
        step = steps[min(stage, len(steps) - 1)]
        for _ in range(per):
            G = np.clip(Y @ np.swapaxes(Y, 1, 2), -1.0, 1.0)
            D = np.arccos(G)
            z = np.clip((d - D) / eps, -50.0, 50.0)
            sig = 1.0 / (1.0 + np.exp(-z))
            # derivative of the pair objective with respect to the distance
            dobj = -sig * (1.0 - sig) / eps + 2.0 * lam * np.maximum(0.0, d - D)
            S = np.maximum(np.sqrt(1.0 - G * G), SIN_FLOOR)
            C = np.where(mask, dobj / S, 0.0)
            g = _distance_gradient(Y, G, C)
            gmax = np.linalg.norm(g, axis=-1).max(axis=-1)[:, None, None]
            Y = Y + step * g / np.maximum(gmax, 1e-300)
            Y /= np.linalg.norm(Y, axis=-1, keepdims=True)
    return Y


def _solve_contacts(X: np.ndarray, dd: float, tight: np.ndarray):
    """Least-squares solve for ``d_ij = dd`` on ``tight`` pairs and ``d_ij >= dd`` elsewhere.

    Returns ``(points, residuals)``; the first ``tight.sum()`` residuals
    belong to the tight pairs.
    """
    n = len(X)
    iu, ju = np.triu_indices(n, 1)
    ti, tj = iu[tight], ju[tight]
    oi, oj = iu[~tight], ju[~tight]

    def resid(v):
        P = v.reshape(n, 3)
        nrm = np.linalg.norm(P, axis=1)
        U = P / nrm[:, None]
        c = np.clip((U[ti] * U[tj]).sum(axis=1), -1.0, 1.0)
        co = np.clip((U[oi] * U[oj]).sum(axis=1), -1.0, 1.0)
        return np.concatenate([np.arccos(c) - dd, np.minimum(0.0, np.arccos(co) - dd), nrm - 1.0])

    sol = least_squares(resid, X.ravel(), xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    P = sol.x.reshape(n, 3)
    P /= np.linalg.norm(P, axis=1)[:, None]
    return P, resid(P.ravel())


def _enforce_contacts(X: np.ndarray, d: float | None):
    """Make near-contacts exact and remove overlaps.

    Pairs within CONTACT_CAPTURE of the contact distance are driven to it;
    all other pairs are only kept at or above it. With ``d`` None the
    contact distance is the current minimum distance. If the equations are
    inconsistent the worst contact is released, up to three times.
    Returns ``(points, distance)`` or None.
    """
    n = len(X)
    iu, ju = np.triu_indices(n, 1)
    dist = pairwise_angles(X)[iu, ju]
    dd = float(dist.min()) if d is None else d
    tight = dist < dd + CONTACT_CAPTURE
    for _ in range(3):
        P, r = _solve_contacts(X, dd, tight)
        if np.abs(r).max() < 1e-11:
            return P, dd
        bad = np.abs(r[: tight.sum()])
        if bad.size == 0:
            return None
        tight[np.flatnonzero(tight)[int(np.argmax(bad))]] = False
    return None


def _grow_contacts(X: np.ndarray, dd: float, tries: int = 6) -> np.ndarray:
    """Greedily turn the nearest non-contacts into contacts.

    Each attempt adds the closest remaining pair to the contact set and
    keeps the solution only if all equations still hold; ``tries``
    consecutive failures end the search.
    """
    n = len(X)
    iu, ju = np.triu_indices(n, 1)
    failed = 0
    rejected = set()
    while failed < tries:
        dist = pairwise_angles(X)[iu, ju]
        tight = np.abs(dist - dd) <= CONTACT_TOL
        free = [k for k in np.argsort(dist, kind="stable") if not tight[k] and k not in rejected]
        if not free:
            break
        k = free[0]
        trial = tight.copy()
        trial[k] = True
        P, r = _solve_contacts(X, dd, trial)
        if np.abs(r).max() < 1e-11:
            X = P
            failed = 0
        else:
            rejected.add(k)
            failed += 1
    return X


def _count_contacts(X: np.ndarray, d: float | None) -> tuple[int, float] | None:
    try:
        G = build_contact_graph(X, CONTACT_TOL, contact_distance=d)
    except ContactError:
        return None
    return edge_count(G), G.contact_distance


def _deletion_seeds(base: np.ndarray, n: int) -> list[np.ndarray]:
    """Remove points of lowest contact degree from ``base`` until ``n`` remain."""
    X = base.copy()
    while len(X) > n:
        G = build_contact_graph(X, CONTACT_TOL)
        deg = G.degrees()
        X = np.delete(X, int(np.argmin(deg)), axis=0)
    return [X]


def max_contacts(N: int, d: float | None = None, cfg: OptimizerConfig | None = None,
                 extra: int = 3) -> TammesResult:
    """Search for ``N`` points with the most pairs at the minimum distance.

    With ``d`` given, contacts are pairs at distance exactly ``d`` and no
    pair may be closer. Without it the distance is co-optimized: the
    candidates are the best distances found for ``N .. N + extra`` points
    and a grid below the first, and configurations obtained by deleting
    low-degree points from the optima for ``N + 1 .. N + extra`` points are
    also tried. Every candidate is made exact before its contacts are
    counted at tolerance 1e-6.

    ``certificate`` is ``N kappa(d) / 2`` for the winning distance.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    cfg = cfg or OptimizerConfig()
    if N == 2:
        X = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
        return _result(X, 0, (), "max_contacts", 1.0, contacts=1, contact_distance=math.pi)

    candidates: list[tuple[np.ndarray, float | None]] = []
    if d is None:
        sub = replace(cfg, restarts=max(1, cfg.restarts // 4), iterations_per_restart=max(400, cfg.iterations_per_restart // 4))
        optima = [tammes_solve(N + k, sub).code.points for k in range(extra + 1)]
        for base in optima:
            for X in (_deletion_seeds(base, N) if len(base) > N else [base]):
                candidates.append((X, None))
        top = float(SphericalCode(optima[0]).psi)
        grid = sorted({round(float(SphericalCode(b).psi), 12) for b in optima} |
                      {round(top * f, 12) for f in np.linspace(1.0, 0.75, 6)}, reverse=True)
    else:
        if not 0.0 < d <= tammes_upper_bound(N):
            raise ValueError(f"no {N}-point packing has minimum distance {d!r}")
        grid = [float(d)]

    n_anneal = max(1, cfg.restarts // (4 if d is None else 1))
    iters = max(500, cfg.iterations_per_restart // (2 if d is None else 1))
    for dg in grid:
        def block(start, stop, dg=dg):
            Y0 = np.stack([_Shape(N).start(np.random.default_rng(restart_seed(cfg.master_seed, k)))
                           for k in range(start, stop)])
            return _sticky_ascent(Y0, dg, iters, cfg.step_schedule)
        Ys = _run_blocks(block, n_anneal, cfg.threads)
        candidates.extend((Y, dg) for Y in Ys)

    scored = []
    for idx, (X, dc) in enumerate(candidates):
        fixed = _enforce_contacts(X, dc)
        if fixed is None:
            continue
        counted = _count_contacts(fixed[0], d)
        if counted is not None:
            scored.append((counted[0], idx, fixed[0], counted[1]))
    scored.sort(key=lambda c: (-c[0], c[1]))
    best = None
    for e, idx, P, dist in scored[: cfg.polish]:
        grown = _grow_contacts(P, dist)
        counted = _count_contacts(grown, d)
        if counted is not None and counted[0] > e:
            e, P, dist = counted[0], grown, counted[1]
        if best is None or e > best[0]:
            best = (e, idx, P, dist)
    if best is None:
        raise ArithmeticError("no candidate configuration could be made exact")
    e, idx, P, dist = best
    cert = N * kappa(dist) / 2.0 if dist <= 2.0 * math.pi / 3.0 else None
    return _result(P, idx, (), "max_contacts", cert, contacts=int(e), contact_distance=float(dist))


__all__ = [
    "MODES",
    "OptimizerConfig",
    "TammesResult",
    "restart_seed",
    "tammes_solve",
    "antipodal_solve",
    "hemisphere_code_search",
    "max_contacts",
]
