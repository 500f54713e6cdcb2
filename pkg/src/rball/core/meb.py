"""Minimal enclosing ball in E^d.

Randomized Welzl recursion in its move-to-front form: the recursion depth is
bounded by ``d + 1`` (the size of the support set), so it is safe for large
inputs.  The support set on the returned ball certifies minimality: the center
lies in the convex hull of the support points, all of which sit on the sphere.
"""

from __future__ import annotations

import numpy as np

from .types import BallSpec

MAX_DIM = 32


def circumball(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Smallest ball having every given point on its boundary.

    The center is the point of the affine hull equidistant from all points.
    Affinely dependent (but cospherical) inputs are handled by least squares.
    """
    p0 = points[0]
    if len(points) == 1:
        return p0.copy(), 0.0
    E = points[1:] - p0
    G = E @ E.T
    rhs = 0.5 * np.einsum("ij,ij->i", E, E)
    try:
        alpha = np.linalg.solve(G, rhs)
    except np.linalg.LinAlgError:
        alpha = np.linalg.lstsq(G, rhs, rcond=None)[0]
    center = p0 + alpha @ E
    radius = float(np.max(np.linalg.norm(points - center, axis=1)))
    return center, radius


class _Welzl:
    def __init__(self, pts: np.ndarray, eps: float):
        self.pts = pts
        self.order = list(range(len(pts)))
        self.eps = eps
        self.dim = pts.shape[1]

    def outside(self, idx: int, center, radius) -> bool:
        return float(np.linalg.norm(self.pts[idx] - center)) > radius + self.eps

    def ball(self, support: list[int]):
        if not support:
            return None, -1.0
        return circumball(self.pts[support])

    def mtf(self, end: int, support: list[int]):
        """Smallest ball enclosing order[:end] with ``support`` on its boundary."""
        center, radius = self.ball(support)
        if len(support) == self.dim + 1:
            return center, radius, list(support)
        best_support = list(support)
        i = 0
        while i < end:
            idx = self.order[i]
            if center is None or self.outside(idx, center, radius):
                center, radius, best_support = self.mtf(i, support + [idx])
                # move to front; later scans start with the hard points
                del self.order[i]
                self.order.insert(0, idx)
            i += 1
        return center, radius, best_support


def minimal_enclosing_ball(points, dim: int | None = None, seed: int = 0, eps: float = 1e-12) -> BallSpec:
    """Smallest ball containing ``points``.

    Args:
        points: array-like of shape (N, d), N >= 1.
        dim: optional dimension check.
        seed: seeds the initial shuffle; results do not depend on it beyond
            floating-point noise.
        eps: relative containment slack used inside the recursion.

    Returns:
        BallSpec whose ``support`` holds the indices of the points on the
        boundary that determine the ball.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        # a flat list is a 1-d point set when dim == 1, otherwise one point
        pts = pts.reshape(-1, 1) if dim == 1 else pts.reshape(1, -1)
    if pts.size == 0 or pts.shape[0] == 0:
        raise ValueError("minimal_enclosing_ball needs at least one point")
    if dim is not None and pts.shape[1] != dim:
        raise ValueError(f"points have dimension {pts.shape[1]}, expected {dim}")
    if pts.shape[1] > MAX_DIM:
        raise ValueError(f"dimension capped at {MAX_DIM}")
    scale = float(np.max(np.abs(pts))) or 1.0
    solver = _Welzl(pts, eps * scale)
    rng = np.random.default_rng(seed)
    solver.order = [int(i) for i in rng.permutation(len(pts))]
    center, radius, support = solver.mtf(len(pts), [])
    # final radius measured against every point so containment is exact
    radius = float(np.max(np.linalg.norm(pts - center, axis=1)))
    return BallSpec(center, radius, tuple(sorted(support)))


def support_weights(points, ball: BallSpec) -> np.ndarray:
    """Convex weights expressing the MEB center by its support points.

    Nonnegative weights are the optimality certificate of the ball.
    """
    pts = np.asarray(points, dtype=float)[list(ball.support)]
    A = np.vstack([pts.T, np.ones(len(pts))])
    b = np.append(ball.center, 1.0)
    return np.linalg.lstsq(A, b, rcond=None)[0]
