"""Random instances: normalized generator sets, centered simplices, coverings, sphere sets."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.meb import minimal_enclosing_ball
from ..core.types import PointConfig
from ..highd.sampling import substream, uniform_ball, uniform_sphere
from ..records import InstanceSpec
from ..sphere import SphericalConfig, hemisphere_free

REJECTION_CAP = 100_000


def normalize(points: np.ndarray, r0: float) -> np.ndarray:
    """Translate the circumcenter to the origin and scale the circumradius to ``r0``.

    Similarities preserve which points support the enclosing ball.  A second
    pass removes the rounding left by the first.
    """
    pts = np.asarray(points, dtype=float)
    for _ in range(2):
        ball = minimal_enclosing_ball(pts)
        if ball.radius == 0.0:
            raise ValueError("cannot normalize a configuration of coincident points")
        pts = (pts - ball.center) * (r0 / ball.radius)
    return pts


def gen_config(spec: InstanceSpec) -> PointConfig:
    """Point configuration for ``spec`` with circumcenter o and circumradius ``r0``."""
    d, r0 = spec.dim, spec.r0
    if spec.kind == "antipodal-pair":
        e = np.zeros(d)
        e[0] = r0
        return PointConfig(d, spec.r, np.array([-e, e]))
    if spec.kind == "simplex-centered":
        return gen_simplex_centered(d, spec.l or d, r0, spec.seed).config(spec.r)
    if spec.kind == "covering":
        raise ValueError("covering instances come from gen_covering")
    if spec.n < 2:
        raise ValueError("generic instances need at least two points")
    rng = substream(spec.seed, 0xC0)
    pts = normalize(uniform_ball(rng, spec.n, d), r0)
    ball = minimal_enclosing_ball(pts)
    if abs(ball.radius - r0) > 1e-9 * max(r0, 1.0) or np.linalg.norm(ball.center) > 1e-9 * max(r0, 1.0):
        raise ArithmeticError("normalization post-condition violated")
    return PointConfig(d, spec.r, pts)


@dataclass(frozen=True, eq=False)
class CenteredSimplex:
    """``l + 1`` points on the sphere of radius ``r0`` with the origin in their relative interior.

    ``barycentric`` holds the coordinates of the origin, all at least the
    acceptance threshold; they certify centering.
    """

    points: np.ndarray
    barycentric: np.ndarray
    r0: float

    def config(self, r: float) -> PointConfig:
        return PointConfig(self.points.shape[1], r, self.points)


def gen_simplex_centered(d: int, l: int, r0: float, seed: int, threshold: float = 1e-3) -> CenteredSimplex:
    """Random l-simplex inscribed in ``r0 S^(d-1)`` whose relative interior contains o.

    Vertices are drawn uniformly on the unit sphere of a random l-dimensional
    subspace.  Draws are rejected until every barycentric coordinate of the
    origin is at least ``threshold``.
    """
    if not 1 <= l <= d:
        raise ValueError("need 1 <= l <= d")
    rng = substream(seed, 0x51)
    basis, _ = np.linalg.qr(rng.standard_normal((d, l)))
    for _ in range(REJECTION_CAP):
        local = uniform_sphere(rng, l + 1, l)
        A = np.vstack([local.T, np.ones(l + 1)])
        b = np.append(np.zeros(l), 1.0)
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        bary = np.linalg.solve(A, b)
        if np.all(bary >= threshold):
            return CenteredSimplex(r0 * local @ basis.T, bary, r0)
    raise RuntimeError(f"no centered simplex after {REJECTION_CAP} draws")


def regular_simplex(d: int, l: int, r0: float) -> CenteredSimplex:
    """Regular l-simplex inscribed in ``r0 S^(d-1)``, centered at o."""
    # the standard basis of E^(l+1), centered and scaled, spans an l-flat
    E = np.eye(l + 1) - 1.0 / (l + 1)
    _, _, vt = np.linalg.svd(E)
    local = E @ vt[:l].T
    local *= r0 / np.linalg.norm(local[0])
    pts = np.zeros((l + 1, d))
    pts[:, :l] = local
    return CenteredSimplex(pts, np.full(l + 1, 1.0 / (l + 1)), r0)


@dataclass(frozen=True, eq=False)
class CoveringPiece:
    """An ``radius``-ball body ``∩ B[g, radius]`` over ``generators``."""

    generators: np.ndarray
    radius: float
    core_center: np.ndarray
    core_radius: float

    def contains(self, X: np.ndarray, eps: float = 1e-12) -> np.ndarray:
        d2 = np.sum((X[:, None, :] - self.generators[None]) ** 2, axis=2)
        return np.all(d2 <= (self.radius * (1.0 + eps)) ** 2, axis=1)

    def to_dict(self) -> dict:
        return {"generators": self.generators.tolist(), "radius": self.radius}


def _cap_cover(t: float, r: float, u: float) -> tuple[float, float]:
    """Ball ``B[s e, rho]`` containing the cap ``{x in B[o, r] : <x, e> >= t}``, t >= 0.

    Its sphere passes through the rim of the cap: ``rho^2 = r^2 - 2 s t + s^2``.
    Taking ``s`` in ``[t, 2t]`` keeps ``rho <= r``.
    """
    s = t * (1.0 + u)
    return s, math.sqrt(max(r * r - 2.0 * s * t + s * s, 0.0))


def gen_covering(r: float, n: int, seed: int, extra_generators: int = 3) -> tuple[list[CoveringPiece], np.ndarray]:
    """Cover ``B[o, r]`` in the plane by ``n`` ball bodies of radii at most ``r``.

    The disk is cut into ``n`` parallel strips along a random direction ``e``.
    A strip lying in ``<x, e> >= t >= 0`` is covered by a ball ``B[s e, rho]``
    through the rim of that cap; strips on the other side are mirrored.  The
    strip through the origin gets the disk itself.  Each piece is then an
    ``r_i``-ball body with ``rho <= r_i <= r``.  Its generators are drawn in
    ``B[s e, r_i - rho]``, so the piece contains the covering ball.  Returns
    the pieces and the direction.
    """
    if n < 1:
        raise ValueError("need at least one piece")
    rng = substream(seed, 0xCA)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    e = np.array([math.cos(phi), math.sin(phi)])
    cuts = np.concatenate([[-r], np.sort(rng.uniform(-r, r, n - 1)), [r]])
    pieces = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if lo >= 0.0:
            s, rho = _cap_cover(lo, r, rng.random())
            core = s * e
        elif hi <= 0.0:
            s, rho = _cap_cover(-hi, r, rng.random())
            core = -s * e
        else:
            pieces.append(CoveringPiece(np.zeros((1, 2)), r, np.zeros(2), r))
            continue
        radius = rng.uniform(rho, r)
        slack = radius - rho
        k = 1 + int(rng.integers(0, extra_generators + 1))
        gens = core + slack * uniform_ball(rng, k, 2)
        pieces.append(CoveringPiece(gens, radius, core, rho))
    return pieces, e


def gen_hemisphere_free(sphere_dim: int, m: int, seed: int, epsilon: float = math.pi / 2) -> SphericalConfig:
    """Uniform random points on S^d, resampled until robustly hemisphere-free."""
    rng = substream(seed, 0x4E)
    for _ in range(REJECTION_CAP):
        pts = uniform_sphere(rng, m, sphere_dim + 1)
        verdict = hemisphere_free(pts)
        if verdict.free and not verdict.borderline:
            return SphericalConfig(sphere_dim, pts / np.linalg.norm(pts, axis=1, keepdims=True), epsilon)
    raise RuntimeError(f"no hemisphere-free set after {REJECTION_CAP} draws")
