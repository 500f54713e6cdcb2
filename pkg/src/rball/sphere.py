"""Caps, neighborhoods, hemisphere-freeness and Voronoi densities on S^d."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from .core.constants import sphere_area
from .core.measures import cap_lateral_area
from .highd.sampling import CHUNK, Estimate, hit_estimate, substream, uniform_sphere

BORDERLINE = 1e-9


@dataclass(frozen=True, eq=False)
class SphericalConfig:
    """Points on the unit sphere S^d in E^(d+1) with an angular radius ``epsilon``."""

    sphere_dim: int
    points: np.ndarray
    epsilon: float

    def __post_init__(self):
        if self.sphere_dim < 1:
            raise ValueError("sphere_dim must be positive")
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] != self.sphere_dim + 1:
            raise ValueError(f"points must be a non-empty (m, {self.sphere_dim + 1}) array")
        if np.any(np.abs(np.linalg.norm(pts, axis=1) - 1.0) > 1e-12):
            raise ValueError("points must have unit norm")
        if not 0.0 < self.epsilon <= math.pi / 2:
            # the neighborhood lemma is stated for eps <= pi/2 only
            raise ValueError("epsilon must lie in (0, pi/2]")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @classmethod
    def normalized(cls, sphere_dim: int, points, epsilon: float) -> SphericalConfig:
        pts = np.asarray(points, dtype=float)
        return cls(sphere_dim, pts / np.linalg.norm(pts, axis=1, keepdims=True), epsilon)

    def with_epsilon(self, epsilon: float) -> SphericalConfig:
        return SphericalConfig(self.sphere_dim, self.points, epsilon)

    def antipodal_pair(self) -> SphericalConfig:
        x = self.points[0]
        return SphericalConfig(self.sphere_dim, np.array([x, -x]), self.epsilon)

    def to_dict(self) -> dict:
        return {"sphere_dim": self.sphere_dim, "epsilon": self.epsilon, "points": self.points.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> SphericalConfig:
        return cls(int(data["sphere_dim"]), data["points"], float(data["epsilon"]))


def total_measure(d: int) -> float:
    """``SV_d(S^d) = (d + 1) omega_(d+1)``."""
    return sphere_area(d + 1)


def spherical_cap_measure(d: int, eps: float) -> float:
    """Measure of a geodesic cap of angular radius ``eps`` on S^d."""
    if not -1e-15 <= eps <= math.pi + 1e-15:
        raise ValueError("eps must lie in [0, pi]")
    eps = min(max(eps, 0.0), math.pi)
    if d == 1:
        return 2.0 * eps
    return cap_lateral_area(d + 1, 1.0, eps)


def geodesic_distance(x, y) -> np.ndarray:
    """Angle between unit vectors, with the cosine clamped to [-1, 1]."""
    return np.arccos(np.clip(np.asarray(x) @ np.asarray(y).T, -1.0, 1.0))


@dataclass(frozen=True)
class HemisphereVerdict:
    """Outcome of :func:`hemisphere_free`.

    ``free`` is true when no open hemisphere contains the points.  ``margin``
    is the optimal ``delta`` of the margin program (positive iff some ``u``
    separates).  ``depth`` is the distance from the origin to the boundary of
    the convex hull (zero when the hull is not full-dimensional).
    ``borderline`` flags instances within ``tol`` of switching.  ``witness``
    is a separating unit vector; ``coefficients`` express the origin as a
    convex combination of the points.
    """

    free: bool
    margin: float
    depth: float
    borderline: bool
    witness: np.ndarray | None = None
    coefficients: np.ndarray | None = None


def hull_depth(X: np.ndarray) -> float:
    """Signed distance from the origin to the boundary of ``conv X`` (positive inside)."""
    m, n = X.shape
    if m < n + 1 or np.linalg.matrix_rank(X - X.mean(axis=0), tol=1e-12) < n:
        return 0.0
    eq = ConvexHull(X).equations
    return float(np.min(-eq[:, -1]))


def hemisphere_free(config_or_points, tol: float = BORDERLINE) -> HemisphereVerdict:
    """Decide whether the points avoid every open hemisphere.

    This holds iff the origin is in their convex hull.  Separation is decided
    by the linear program ``max delta`` subject to ``<u, x_i> >= delta`` and
    ``-1 <= u_j <= 1``.  The cube replaces the unit ball so that the program
    stays linear; only the sign of ``delta`` matters.  Freeness is certified by
    convex coefficients of the origin.
    """
    X = config_or_points.points if isinstance(config_or_points, SphericalConfig) else np.asarray(config_or_points, float)
    m, n = X.shape
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A = np.hstack([-X, np.ones((m, 1))])
    bounds = [(-1.0, 1.0)] * n + [(None, None)]
    res = linprog(c, A_ub=A, b_ub=np.zeros(m), bounds=bounds, method="highs")
    if res.status != 0:
        raise ArithmeticError(f"margin program failed: {res.message}")
    delta = float(res.x[-1])
    u = res.x[:n]
    if delta > tol:
        return HemisphereVerdict(False, delta, -delta, False, witness=u / np.linalg.norm(u))
    A_eq = np.vstack([X.T, np.ones((1, m))])
    b_eq = np.append(np.zeros(n), 1.0)
    feas = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs")
    if feas.status != 0:
        return HemisphereVerdict(False, delta, -delta, True)
    depth = hull_depth(X)
    return HemisphereVerdict(True, delta, depth, depth <= tol, coefficients=feas.x)


def _sphere_draws(seed: int, samples: int, dim: int):
    rng = substream(seed, 0x55)
    done = 0
    while done < samples:
        n = min(CHUNK, samples - done)
        yield uniform_sphere(rng, n, dim)
        done += n


def mc_neighborhood_measure(config: SphericalConfig, samples: int, seed: int) -> Estimate:
    """Measure of the ``eps``-neighborhood ``X_eps`` by uniform sampling on S^d."""
    d = config.sphere_dim
    hits = 0
    for S in _sphere_draws(seed, samples, d + 1):
        dist = geodesic_distance(S, config.points)
        hits += int(np.count_nonzero(np.min(dist, axis=1) <= config.epsilon))
    return hit_estimate(hits, samples, total_measure(d), seed, "mc-sphere")


@dataclass(frozen=True)
class VoronoiSite:
    cell: Estimate
    cap_in_cell: Estimate
    ratio: float
    ratio_stderr: float
    bound: float

    @property
    def margin(self) -> float:
        return self.ratio - self.bound

    def to_dict(self) -> dict:
        return {
            "cell": self.cell.to_dict(),
            "cap_in_cell": self.cap_in_cell.to_dict(),
            "ratio": self.ratio,
            "ratio_stderr": self.ratio_stderr,
            "bound": self.bound,
            "margin": self.margin,
        }


def mc_voronoi_density(config: SphericalConfig, samples: int, seed: int) -> list[VoronoiSite]:
    """Per-site share of the Voronoi cell covered by the site's cap.

    Each sample goes to its geodesically nearest site.  The ratio ``SV(cap of
    x_i within V_i) / SV(V_i)`` is compared against ``cap(eps) / SV(hemisphere)``.
    The ratio's error is the binomial error given the cell count, at the
    Laplace-smoothed rate.
    """
    verdict = hemisphere_free(config)
    if not verdict.free:
        raise ValueError("Voronoi density bound needs a hemisphere-free configuration")
    X = config.points
    for i in range(len(X)):
        if np.any(np.linalg.norm(X[i + 1:] - X[i], axis=1) < 1e-12):
            raise ValueError("sites must be pairwise distinct")
    d = config.sphere_dim
    m = len(X)
    in_cell = np.zeros(m, dtype=np.int64)
    in_cap = np.zeros(m, dtype=np.int64)
    for S in _sphere_draws(seed, samples, d + 1):
        dist = geodesic_distance(S, X)
        owner = np.argmin(dist, axis=1)
        close = dist[np.arange(len(S)), owner] <= config.epsilon
        in_cell += np.bincount(owner, minlength=m)
        in_cap += np.bincount(owner[close], minlength=m)
    total = total_measure(d)
    bound = spherical_cap_measure(d, config.epsilon) / (0.5 * total)
    out = []
    for i in range(m):
        n_cell = int(in_cell[i])
        ratio = float(in_cap[i]) / n_cell if n_cell else math.nan
        smooth = (in_cap[i] + 1.0) / (n_cell + 2.0)
        se = math.sqrt(smooth * (1.0 - smooth) / max(n_cell, 1))
        out.append(VoronoiSite(
            cell=hit_estimate(n_cell, samples, total, seed, "mc-voronoi-cell"),
            cap_in_cell=hit_estimate(int(in_cap[i]), samples, total, seed, "mc-voronoi-cap"),
            ratio=ratio,
            ratio_stderr=se,
            bound=bound,
        ))
    return out
