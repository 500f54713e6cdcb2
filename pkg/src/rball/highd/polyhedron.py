"""Membership, projection and support of r-ball polyhedra in any dimension.

The support solver rests on one observation.  At a maximizer ``x`` of
``<u, x>`` over ``P^r`` with active generators ``S``, the KKT condition puts
``u`` in the cone spanned by ``x - p_i`` (i in S).  So ``x`` is the top point,
in direction ``u``, of the sphere of points at distance exactly ``r`` from
every point of ``S``.  That sphere lives in the orthogonal complement of the
affine hull of ``S``.  Its center is the circumcenter ``c_S`` and its radius
is ``sqrt(r^2 - R_S^2)``.  Every such candidate that is feasible is a lower
bound, and the best feasible candidate is the support value.  Candidates are
enumerated over small subsets; for large generator sets, violated
constraints are added one at a time.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import nnls

from ..core.meb import circumball, minimal_enclosing_ball
from ..core.types import DEFAULT_TOL, PointConfig

ENUMERATION_CAP = 3000


class EmptyBodyError(ValueError):
    """P^r is empty: the generators have circumradius larger than r."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap."""


def _check_point(config: PointConfig, y) -> np.ndarray:
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != config.dim:
        raise ValueError(f"point has {y.shape[0]} coordinates, config has dim {config.dim}")
    return y


def _generators(config: PointConfig) -> np.ndarray:
    return config.effective_points()


def require_nonempty(config: PointConfig, eps: float = DEFAULT_TOL.exact_eps):
    ball = minimal_enclosing_ball(config.points, config.dim)
    if ball.radius > config.radius + eps:
        raise EmptyBodyError(
            f"generator circumradius {ball.radius:.6g} exceeds r = {config.radius:.6g}"
        )
    return ball


def member_polyhedron(config: PointConfig, y, eps: float = DEFAULT_TOL.exact_eps) -> bool:
    y = _check_point(config, y)
    dist = np.linalg.norm(config.points - y, axis=1)
    return bool(np.all(dist <= config.radius + eps))


def feasibility_residual(config: PointConfig, x) -> float:
    """``max_i |x - p_i| - r``; nonpositive exactly on P^r."""
    x = _check_point(config, x)
    return float(np.max(np.linalg.norm(config.points - x, axis=1)) - config.radius)


def _project_ball(z: np.ndarray, center: np.ndarray, r: float) -> np.ndarray:
    diff = z - center
    dist = math.sqrt(float(diff @ diff))
    if dist <= r:
        return z
    return center + (r / dist) * diff


def project_polyhedron(config: PointConfig, y, tol: float = 1e-10, max_iter: int = 10_000) -> np.ndarray:
    """Euclidean projection of ``y`` onto ``P^r`` by cyclic Dykstra iteration.

    Stops when the feasibility residual and the total change of the correction
    vectors over one sweep are both below ``tol``.

    Raises:
        EmptyBodyError: ``P^r`` is empty.
        ConvergenceError: the sweep cap was reached first.
    """
    y = _check_point(config, y)
    require_nonempty(config)
    pts = _generators(config)
    r = config.radius
    if member_polyhedron(config, y, eps=0.0):
        return y.copy()
    x = y.copy()
    corr = np.zeros_like(pts)
    for _ in range(max_iter):
        change = 0.0
        for i, p in enumerate(pts):
            z = x + corr[i]
            x = _project_ball(z, p, r)
            new = z - x
            delta = new - corr[i]
            change += float(delta @ delta)
            corr[i] = new
        resid = float(np.max(np.linalg.norm(pts - x, axis=1))) - r
        if resid <= tol and math.sqrt(change) <= tol:
            return x
    raise ConvergenceError(f"Dykstra projection did not converge in {max_iter} sweeps")


class SupportSolver:
    """Exact support function of ``P^r`` for one configuration.

    Subset geometry (circumcenter, sphere radius and affine directions) does
    not depend on the direction and is cached, so many directions are cheap.
    """

    def __init__(self, config: PointConfig, feas_tol: float | None = None):
        self.config = config
        self.ball = require_nonempty(config)
        self.pts = _generators(config)
        self.r = config.radius
        self.dim = config.dim
        scale = max(self.r, float(np.max(np.abs(self.pts))))
        self.feas_tol = feas_tol if feas_tol is not None else 1e-10 * scale
        self._scale = scale
        self._cache: dict[tuple[int, ...], tuple | None] = {}
        n = len(self.pts)
        top = min(self.dim, n)
        self.subset_count = sum(math.comb(n, k) for k in range(1, top + 1))
        self._stack = None

    def _geometry(self, subset: tuple[int, ...]):
        if subset in self._cache:
            return self._cache[subset]
        P = self.pts[list(subset)]
        out = None
        if len(subset) == 1:
            out = (P[0], self.r, np.zeros((self.dim, self.dim)))
        else:
            E = P[1:] - P[0]
            _, sv, vt = np.linalg.svd(E, full_matrices=False)
            if sv[-1] > 1e-10 * self._scale:
                center, R = circumball(P)
                if R <= self.r * (1.0 + 1e-12):
                    basis = vt[: len(subset) - 1]
                    out = (center, math.sqrt(max(self.r * self.r - R * R, 0.0)), basis.T @ basis)
        self._cache[subset] = out
        return out

    def _subset_arrays(self, subsets):
        geo = [(s, self._geometry(s)) for s in subsets]
        geo = [(s, g) for s, g in geo if g is not None]
        centers = np.array([g[0] for _, g in geo])
        rhos = np.array([g[1] for _, g in geo])
        projs = np.array([g[2] for _, g in geo])
        return [s for s, _ in geo], centers, rhos, projs

    def _candidates(self, U, centers, rhos, projs, gens):
        """Top points of every subset sphere for every direction, with feasibility."""
        W = U[:, None, :] - np.einsum("md,kde->mke", U, projs)
        norms = np.linalg.norm(W, axis=2)
        ok = norms > 1e-13
        W = np.where(ok[..., None], W / np.where(ok, norms, 1.0)[..., None], 0.0)
        X = centers[None, :, :] + rhos[None, :, None] * W
        vals = np.einsum("md,mkd->mk", U, X)
        viol = np.zeros(vals.shape)
        for p in gens:
            dist = np.linalg.norm(X - p, axis=2)
            np.maximum(viol, dist - self.r, out=viol)
        feasible = ok & (viol <= self.feas_tol)
        vals = np.where(feasible, vals, -np.inf)
        return vals, X

    def _all_subsets(self):
        if self._stack is None:
            n = len(self.pts)
            subsets = [s for k in range(1, min(self.dim, n) + 1) for s in itertools.combinations(range(n), k)]
            self._stack = self._subset_arrays(subsets)
        return self._stack

    def _enumerate(self, U: np.ndarray):
        _, centers, rhos, projs = self._all_subsets()
        vals = np.empty(len(U))
        pts = np.empty((len(U), self.dim))
        block = max(1, 200_000 // max(len(centers) * self.dim, 1))
        for start in range(0, len(U), block):
            Ub = U[start:start + block]
            v, X = self._candidates(Ub, centers, rhos, projs, self.pts)
            best = np.argmax(v, axis=1)
            rows = np.arange(len(Ub))
            vals[start:start + block] = v[rows, best]
            pts[start:start + block] = X[rows, best]
        if not np.all(np.isfinite(vals)):
            raise ArithmeticError("no feasible support candidate; degenerate configuration")
        return vals, pts

    def _active_set(self, u: np.ndarray):
        working = [int(np.argmin(self.pts @ u))]
        for _ in range(len(self.pts) + 1):
            top = min(self.dim, len(working))
            subsets = [tuple(sorted(s)) for k in range(1, top + 1) for s in itertools.combinations(working, k)]
            _, centers, rhos, projs = self._subset_arrays(subsets)
            v, X = self._candidates(u[None, :], centers, rhos, projs, self.pts[working])
            best = int(np.argmax(v[0]))
            if not np.isfinite(v[0, best]):
                raise ArithmeticError("no feasible support candidate; degenerate configuration")
            x = X[0, best]
            gaps = np.linalg.norm(self.pts - x, axis=1) - self.r
            worst = int(np.argmax(gaps))
            if gaps[worst] <= self.feas_tol:
                return float(v[0, best]), x
            working.append(worst)
        raise ArithmeticError("active-set support search did not settle")

    def support(self, U, method: str = "auto"):
        """Support values and maximizers for one direction or an (M, d) array."""
        U = np.asarray(U, dtype=float)
        single = U.ndim == 1
        U = np.atleast_2d(U)
        if U.shape[1] != self.dim:
            raise ValueError("direction dimension mismatch")
        U = U / np.linalg.norm(U, axis=1, keepdims=True)
        if method == "auto":
            method = "enumerate" if self.subset_count <= ENUMERATION_CAP else "active-set"
        if method == "enumerate":
            vals, pts = self._enumerate(U)
        elif method == "active-set":
            out = [self._active_set(u) for u in U]
            vals = np.array([o[0] for o in out])
            pts = np.array([o[1] for o in out])
        elif method == "ascent":
            out = [support_by_ascent(self.config, u) for u in U]
            vals = np.array([o[0] for o in out])
            pts = np.array([o[1] for o in out])
        else:
            raise ValueError(f"unknown support method {method!r}")
        if single:
            return float(vals[0]), pts[0]
        return vals, pts


def support_polyhedron(config: PointConfig, u, tol: float = DEFAULT_TOL.optim_tol, method: str = "auto"):
    """``max <u, x>`` over ``P^r`` and a maximizer.

    ``method`` selects full subset enumeration, active-set constraint
    generation, or projected ascent (``"ascent"``, iterative, accurate to about
    ``tol``).  ``"auto"`` picks an exact method by problem size.
    """
    u = _check_point(config, u)
    if method == "ascent":
        return support_by_ascent(config, u, tol)
    return SupportSolver(config).support(u, method)


def support_by_ascent(config: PointConfig, u, tol: float = DEFAULT_TOL.optim_tol, max_iter: int = 10_000):
    """Projected ascent ``x <- proj(x + step * u)`` started at the circumcenter.

    For a linear objective the fixed points are exactly the maximizers.  The
    step starts at ``r`` and halves whenever a step gains less than ``tol``.
    """
    u = _check_point(config, u)
    u = u / np.linalg.norm(u)
    ball = require_nonempty(config)
    x = ball.center.copy()
    step = config.radius
    for _ in range(max_iter):
        nxt = project_polyhedron(config, x + step * u, tol=tol * 1e-2)
        gain = float(u @ (nxt - x))
        x = nxt
        if gain < tol:
            step *= 0.5
            if step < tol:
                return float(u @ x), x
    raise ConvergenceError("projected ascent did not converge")


def stationarity_residual(config: PointConfig, u, x, active_tol: float = 1e-7) -> tuple[float, np.ndarray]:
    """Distance from ``u`` to the cone of outward normals active at ``x``.

    Returns the residual and the nonnegative multipliers (one per generator,
    zero for inactive ones).  A maximizer has residual zero.
    """
    u = _check_point(config, u)
    u = u / np.linalg.norm(u)
    pts = _generators(config)
    dist = np.linalg.norm(pts - x, axis=1)
    active = np.flatnonzero(dist >= config.radius - active_tol)
    mult = np.zeros(len(pts))
    if len(active) == 0:
        return float(np.linalg.norm(u)), mult
    G = ((x - pts[active]) / config.radius).T
    coef, resid = nnls(G, u)
    mult[active] = coef
    return float(resid), mult


def _simplex_projection(v: np.ndarray) -> np.ndarray:
    s = np.sort(v)[::-1]
    css = np.cumsum(s) - 1.0
    k = np.arange(1, len(v) + 1)
    rho = np.nonzero(s - css / k > 0)[0][-1]
    return np.maximum(v - css[rho] / (rho + 1.0), 0.0)


def inradius_dual(config: PointConfig, tol: float = 1e-12, max_iter: int = 20_000) -> tuple[np.ndarray, float, float]:
    """Inradius of ``P^r`` through the dual of the enclosing-ball problem.

    Maximizes the weighted variance ``sum w_i |p_i - q_w|^2`` (``q_w`` the
    weighted mean) over the simplex by accelerated projected gradient.  The
    support of the weights is then polished to an exact circumcenter.  For
    any weights the square root of the variance is a lower bound on the
    circumradius, and the largest distance from ``q_w`` to a point is an upper
    bound.  Returns ``(center, r - upper, upper - lower)``.  This route shares
    nothing with the Welzl solver, so it serves as an independent check.
    """
    P = _generators(config)
    n = len(P)
    if n == 1:
        return P[0].copy(), config.radius, 0.0
    shift = P.mean(axis=0)
    Q = P - shift
    sq = np.einsum("ij,ij->i", Q, Q)
    lip = 2.0 * float(np.linalg.norm(Q, 2) ** 2) or 1.0
    w = np.full(n, 1.0 / n)
    y, t = w.copy(), 1.0

    def bounds(weights):
        q = weights @ Q
        var = float(weights @ sq - q @ q)
        up = float(np.max(np.linalg.norm(Q - q, axis=1)))
        return q, math.sqrt(max(var, 0.0)), up

    best = None
    for it in range(max_iter):
        grad = sq - 2.0 * (Q @ (y @ Q))
        w_new = _simplex_projection(y + grad / lip)
        t_new = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
        y = w_new + ((t - 1.0) / t_new) * (w_new - w)
        w, t = w_new, t_new
        if it % 25 == 0:
            polished = _polish(Q, w)
            cand = polished if polished is not None else bounds(w)
            if best is None or cand[2] - cand[1] < best[2] - best[1]:
                best = cand
            if best[2] - best[1] <= tol * max(best[2], 1.0):
                break
    q, low, up = best
    return q + shift, config.radius - up, max(up - low, 0.0)


def _polish(Q: np.ndarray, w: np.ndarray):
    """Exact circumcenter of the weight support, if it certifies optimality."""
    support = np.flatnonzero(w > 1e-9 * float(np.max(w)))
    S = Q[support]
    center, _ = circumball(S)
    A = np.vstack([S.T, np.ones(len(support))])
    bary = np.linalg.lstsq(A, np.append(center, 1.0), rcond=None)[0]
    if np.any(bary < -1e-12) or abs(bary.sum() - 1.0) > 1e-9:
        return None
    bary = np.clip(bary, 0.0, None)
    bary /= bary.sum()
    full = np.zeros(len(Q))
    full[support] = bary
    q = full @ Q
    var = float(full @ np.einsum("ij,ij->i", Q, Q) - q @ q)
    up = float(np.max(np.linalg.norm(Q - q, axis=1)))
    return q, math.sqrt(max(var, 0.0)), up
