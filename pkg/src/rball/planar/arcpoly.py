"""Exact arc-polygon representation of intersections of disks in the plane."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..core.meb import minimal_enclosing_ball
from ..core.types import DEFAULT_TOL, PointConfig

TWO_PI = 2.0 * math.pi
MIN_ARC = 1e-12

PROPER = "proper"
FULL_DISK = "full-disk"
SINGLE_POINT = "single-point"
EMPTY = "empty"


@dataclass(frozen=True)
class Arc:
    """Boundary arc on the circle of ``radius`` about ``center``.

    ``start`` lies in (-pi, pi]; the arc runs counterclockwise through
    ``extent`` radians, so its end angle is ``start + extent``.
    """

    center: tuple[float, float]
    start: float
    extent: float
    radius: float
    generator: int = -1

    @property
    def end(self) -> float:
        return self.start + self.extent

    def point(self, angle: float) -> np.ndarray:
        return np.array(self.center) + self.radius * np.array([math.cos(angle), math.sin(angle)])

    def contains_direction(self, angle, slack: float = 0.0):
        return np.mod(np.asarray(angle) - self.start, TWO_PI) <= self.extent + slack

    def to_dict(self) -> dict[str, Any]:
        out = {"center": list(self.center), "start": self.start, "end": self.end}
        return out


@dataclass(frozen=True, eq=False)
class ArcPolygon:
    """Convex region bounded by circular arcs.

    ``vertices[i]`` is where ``arcs[i - 1]`` ends and ``arcs[i]`` begins; both
    run counterclockwise.  ``generators``/``radii`` list every disk whose
    intersection this is, which is all that membership tests need.
    """

    r: float
    kind: str
    vertices: np.ndarray
    arcs: tuple[Arc, ...]
    generators: np.ndarray
    radii: np.ndarray
    point: np.ndarray | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def is_mixed(self) -> bool:
        return bool(np.any(np.abs(self.radii - self.r) > 0))

    @property
    def bounded_region(self) -> bool:
        return self.kind in (PROPER, FULL_DISK)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind,
            "r": self.r,
            "vertices": self.vertices.tolist(),
            "arcs": [a.to_dict() for a in self.arcs],
        }
        if self.point is not None:
            out["center" if self.kind == FULL_DISK else "point"] = self.point.tolist()
        return out


def _wrap(angle: float) -> float:
    """Angle in (-pi, pi]."""
    a = math.remainder(angle, TWO_PI)
    return math.pi if a == -math.pi else a


def _intersect_arcs(a: tuple[float, float], b: tuple[float, float]) -> list[tuple[float, float]]:
    """Intersect two circular angular intervals given as ``(start, length)``."""
    s1, l1 = a
    s2, l2 = b
    if l1 >= TWO_PI:
        return [b]
    if l2 >= TWO_PI:
        return [a]
    delta = (s2 - s1) % TWO_PI
    out = []
    for shift in (delta, delta - TWO_PI):
        lo = max(0.0, shift)
        hi = min(l1, shift + l2)
        if hi >= lo:
            out.append((s1 + lo, hi - lo))
    if len(out) == 2 and out[1][1] == 0.0 and abs(out[1][0] - s1) < 1e-15:
        out.pop()
    return out


def _circle_pieces(centers: np.ndarray, radii: np.ndarray, i: int) -> list[tuple[float, float]]:
    """Angular pieces of circle ``i`` lying in every other disk."""
    ci, Ri = centers[i], radii[i]
    pieces = [(0.0, TWO_PI)]
    for j in range(len(centers)):
        if j == i:
            continue
        diff = centers[j] - ci
        D = math.hypot(diff[0], diff[1])
        Rj = radii[j]
        if D == 0.0:
            if Rj >= Ri:
                continue
            return []
        kappa = (Ri * Ri + D * D - Rj * Rj) / (2.0 * Ri * D)
        if kappa <= -1.0:
            continue
        if kappa > 1.0 + 1e-14:
            return []
        half = math.acos(min(kappa, 1.0))
        alpha = math.atan2(diff[1], diff[0])
        new = []
        for p in pieces:
            new.extend(_intersect_arcs(p, (alpha - half, 2.0 * half)))
        pieces = new
        if not pieces:
            return []
    return pieces


def _assemble(centers: np.ndarray, radii: np.ndarray, r: float, scale: float) -> tuple[np.ndarray, tuple[Arc, ...]]:
    """Clip every generator circle by the other disks and splice the surviving arcs."""
    raw = []
    for i in range(len(centers)):
        for start, length in _circle_pieces(centers, radii, i):
            if length > MIN_ARC:
                raw.append(Arc((float(centers[i][0]), float(centers[i][1])), _wrap(start), float(length), float(radii[i]), i))
    if not raw:
        return np.zeros((0, 2)), ()
    if len(raw) == 1 and raw[0].extent >= TWO_PI - MIN_ARC:
        return np.zeros((0, 2)), tuple(raw)
    # outward normals increase monotonically along a convex boundary
    raw.sort(key=lambda a: a.start % TWO_PI)
    verts = []
    k = len(raw)
    for idx in range(k):
        prev, cur = raw[idx - 1], raw[idx]
        end_prev = prev.point(prev.end)
        start_cur = cur.point(cur.start)
        gap = float(np.linalg.norm(end_prev - start_cur))
        if gap > 1e-7 * scale:
            raise ArithmeticError(f"arc splice mismatch {gap:.3e}; degenerate input")
        verts.append(0.5 * (end_prev + start_cur))
    return np.array(verts), tuple(raw)


def convex_hull_indices(pts: np.ndarray, eps: float = 0.0) -> list[int]:
    """Indices of the strict extreme points of a planar set (monotone chain)."""
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    if len(order) <= 2:
        return order

    def cross(o, a, b):
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= eps:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= eps:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _dedupe(pts: np.ndarray, eps: float) -> np.ndarray:
    keep: list[np.ndarray] = []
    for p in pts:
        if all(math.hypot(p[0] - q[0], p[1] - q[1]) > eps for q in keep):
            keep.append(p)
    return np.array(keep)


def disk_intersection(config: PointConfig, eps: float = DEFAULT_TOL.exact_eps, seed: int = 0) -> ArcPolygon:
    """Arc polygon of the intersection of the radius-r disks about ``config.points``.

    Degenerate outcomes are reported through ``kind``: ``empty`` when the
    circumradius of the generators exceeds r, ``single-point`` when it equals r
    (within ``eps``), ``full-disk`` for a single effective generator.
    """
    if config.dim != 2:
        raise ValueError("disk_intersection needs a planar configuration")
    r = config.radius
    scale = max(r, float(np.max(np.abs(config.points))))
    pts = _dedupe(config.points, 1e-12 * scale)
    if len(pts) == 1:
        return ArcPolygon(r, FULL_DISK, np.zeros((0, 2)),
                          (Arc((float(pts[0][0]), float(pts[0][1])), -math.pi, TWO_PI, r, 0),),
                          pts, np.full(1, r), point=pts[0].copy())
    ball = minimal_enclosing_ball(pts, 2, seed=seed)
    if ball.radius > r + eps:
        return ArcPolygon(r, EMPTY, np.zeros((0, 2)), (), pts, np.full(len(pts), r))
    if ball.radius >= r - eps:
        return ArcPolygon(r, SINGLE_POINT, ball.center.reshape(1, 2), (), pts,
                          np.full(len(pts), r), point=ball.center.copy())
    # X^r == (conv X)^r, so only extreme points can carry arcs
    ext = pts[convex_hull_indices(pts)] if len(pts) > 2 else pts
    rng = np.random.default_rng(seed)
    ext = ext[rng.permutation(len(ext))]
    verts, arcs = _assemble(ext, np.full(len(ext), r), r, scale)
    return ArcPolygon(r, PROPER, verts, arcs, pts, np.full(len(pts), r),
                      meta={"extreme_generators": ext})


def mixed_disk_intersection(centers, radii) -> ArcPolygon:
    """Intersection of disks with individual radii (internal generalization).

    ``r`` of the returned polygon is the largest radius; each arc carries its
    own radius.  Used where r_i-ball bodies are cut by a larger ball.
    """
    centers = np.asarray(centers, dtype=float).reshape(-1, 2)
    radii = np.asarray(radii, dtype=float).reshape(-1)
    if len(centers) != len(radii) or len(centers) == 0:
        raise ValueError("centers and radii must be non-empty and aligned")
    if np.any(radii <= 0):
        raise ValueError("radii must be positive")
    keep: list[int] = []
    for i in range(len(centers)):
        if not any(np.allclose(centers[i], centers[j], atol=1e-14) and abs(radii[i] - radii[j]) < 1e-14 for j in keep):
            keep.append(i)
    centers, radii = centers[keep], radii[keep]
    rmax = float(np.max(radii))
    scale = max(rmax, float(np.max(np.abs(centers))))
    verts, arcs = _assemble(centers, radii, rmax, scale)
    if not arcs:
        return ArcPolygon(rmax, EMPTY, verts, arcs, centers, radii)
    if len(arcs) == 1 and arcs[0].extent >= TWO_PI - MIN_ARC:
        i = arcs[0].generator
        return ArcPolygon(float(radii[i]), FULL_DISK, verts, arcs, centers, radii, point=centers[i].copy())
    return ArcPolygon(rmax, PROPER, verts, arcs, centers, radii)
