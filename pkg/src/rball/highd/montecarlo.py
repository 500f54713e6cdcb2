"""Monte Carlo volume and surface, and direction-averaged mean width."""

from __future__ import annotations

import math

import numpy as np

from ..core.constants import sphere_area, unit_ball_volume
from ..core.measures import mean_width_factor
from ..core.types import PointConfig
from .polyhedron import SupportSolver, require_nonempty
from .sampling import CHUNK, Estimate, hit_estimate, sphere_directions, substream, uniform_ball, uniform_sphere

# relative slack on squared distances; boundary points have measure zero
_SLACK = 1e-12


def inside_all(X: np.ndarray, centers: np.ndarray, r: float) -> np.ndarray:
    """Mask of rows of ``X`` lying in every ball ``B[c, r]``."""
    limit = r * r * (1.0 + _SLACK)
    xx = np.einsum("nd,nd->n", X, X)
    mask = np.ones(len(X), dtype=bool)
    for start in range(0, len(centers), 64):
        block = centers[start:start + 64]
        d2 = xx[:, None] - 2.0 * (X @ block.T) + np.einsum("kd,kd->k", block, block)[None, :]
        mask &= np.all(d2 <= limit, axis=1)
    return mask


def sampling_ball(config: PointConfig) -> tuple[np.ndarray, float]:
    """Ball ``B[c, sqrt(r^2 - r0^2)]`` about the circumcenter, which contains ``P^r``."""
    ball = require_nonempty(config)
    r = config.radius
    return ball.center.copy(), math.sqrt(max(r * r - ball.radius**2, 0.0))


def _ball_draws(seed: int, samples: int, dim: int):
    rng = substream(seed, 0xB0)
    done = 0
    while done < samples:
        n = min(CHUNK, samples - done)
        yield uniform_ball(rng, n, dim)
        done += n


def mc_volume_polyhedron(config: PointConfig, samples: int, seed: int,
                         center=None, radius: float | None = None) -> Estimate:
    """Volume of ``P^r`` by rejection sampling.

    By default samples are uniform in the ball of radius ``sqrt(r^2 - r0^2)``
    about the circumcenter, which contains ``P^r``.  ``center``/``radius``
    override it; estimates that share the sampling ball and seed use common
    random numbers.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    c0, R0 = sampling_ball(config)
    c = c0 if center is None else np.asarray(center, dtype=float)
    R = R0 if radius is None else float(radius)
    d = config.dim
    pts = config.effective_points()
    if R == 0.0:
        return Estimate(0.0, 0.0, samples, seed, "mc-rejection", 0.0)
    hits = 0
    for Z in _ball_draws(seed, samples, d):
        hits += int(np.count_nonzero(inside_all(c + R * Z, pts, config.radius)))
    return hit_estimate(hits, samples, unit_ball_volume(d) * R**d, seed, "mc-rejection")


def mc_compare_volumes(lower: PointConfig, upper: PointConfig, samples: int, seed: int,
                       center, radius: float) -> tuple[Estimate, Estimate, Estimate]:
    """Volumes of two ball intersections and of their difference from shared samples.

    Returns estimates of ``V(lower)``, ``V(upper)`` and ``V(upper) - V(lower)``.
    The difference has a paired standard error, which is small when the two
    bodies overlap heavily.  Both bodies must lie in ``B[center, radius]``.
    """
    d = lower.dim
    c = np.asarray(center, dtype=float)
    vol = unit_ball_volume(d) * radius**d
    a_pts, b_pts = lower.effective_points(), upper.effective_points()
    na = nb = 0
    s1 = s2 = 0.0
    for Z in _ball_draws(seed, samples, d):
        X = c + radius * Z
        ia = inside_all(X, a_pts, lower.radius)
        ib = inside_all(X, b_pts, upper.radius)
        na += int(ia.sum())
        nb += int(ib.sum())
        diff = ib.astype(float) - ia.astype(float)
        s1 += float(diff.sum())
        s2 += float(diff @ diff)
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0)
    # Laplace-style floor: one phantom disagreement in each direction
    band_var = max((s2 + 2.0) / (samples + 2.0) - (s1 / (samples + 2.0)) ** 2, 0.0)
    diff_est = Estimate(vol * mean, vol * math.sqrt(var / samples), samples, seed, "mc-paired-difference",
                        vol * math.sqrt(band_var / samples))
    return (
        hit_estimate(na, samples, vol, seed, "mc-rejection"),
        hit_estimate(nb, samples, vol, seed, "mc-rejection"),
        diff_est,
    )


def mc_surface_polyhedron(config: PointConfig, samples: int, seed: int) -> tuple[Estimate, Estimate]:
    """Surface area ``2 V_(d-1)`` of ``P^r`` and ``V_(d-1)`` itself.

    The boundary is made of pieces of the generator spheres.  Each sphere gets
    an equal share of uniform samples, and its contribution is the fraction
    lying in every other ball times the full sphere area.
    """
    require_nonempty(config)
    d, r = config.dim, config.radius
    if d < 2:
        raise ValueError("surface estimates need d >= 2")
    pts = config.effective_points()
    per = max(1, samples // len(pts))
    area = sphere_area(d) * r ** (d - 1)
    total = var = band = 0.0
    for i, p in enumerate(pts):
        others = np.delete(pts, i, axis=0)
        rng = substream(seed, 0x5F, i)
        hits = 0
        done = 0
        while done < per:
            n = min(CHUNK, per - done)
            X = p + r * uniform_sphere(rng, n, d)
            hits += int(np.count_nonzero(inside_all(X, others, r))) if len(others) else n
            done += n
        est = hit_estimate(hits, per, area, seed, "mc-surface")
        total += est.value
        var += est.stderr**2
        band += est.band_stderr**2
    surf = Estimate(total, math.sqrt(var), per * len(pts), seed, "mc-surface", math.sqrt(band))
    return surf, surf.scaled(0.5)


def mean_width_polyhedron(config: PointConfig, directions: int, seed: int,
                          solver: SupportSolver | None = None) -> Estimate:
    """``V_1`` from the mean width, averaging ``h(u) + h(-u)`` over directions.

    Directions come from :func:`sphere_directions`; the reported error is the
    sample standard error of the widths, which is conservative for the
    low-discrepancy sets used in d = 2, 3.
    """
    if directions < 2:
        raise ValueError("need at least two directions")
    solver = solver or SupportSolver(config)
    U = sphere_directions(config.dim, directions, seed)
    h_plus = solver.support(U)[0]
    h_minus = solver.support(-U)[0]
    widths = h_plus + h_minus
    factor = mean_width_factor(config.dim)
    mean = float(widths.mean())
    se = float(widths.std(ddof=1) / math.sqrt(directions))
    return Estimate(factor * mean, factor * se, directions, seed, "mean-width")
