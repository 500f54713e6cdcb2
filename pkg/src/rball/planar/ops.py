"""Support function, membership, nearest point and the r-ball hull in the plane."""

from __future__ import annotations

import math

import numpy as np

from ..core.types import DEFAULT_TOL, PointConfig
from .arcpoly import EMPTY, FULL_DISK, PROPER, SINGLE_POINT, TWO_PI, Arc, ArcPolygon, disk_intersection

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


def support_2d(ap: ArcPolygon, u) -> tuple[np.ndarray | float, np.ndarray]:
    """Support value ``max <x, u>`` over the region and a maximizing point.

    ``u`` may be one unit vector or an (M, 2) array of them; the return shapes
    follow (scalar and (2,), or (M,) and (M, 2)).
    """
    if ap.kind == EMPTY:
        raise ValueError("support of an empty region")
    U = np.asarray(u, dtype=float)
    single = U.ndim == 1
    U = np.atleast_2d(U)
    if ap.kind == SINGLE_POINT:
        vals = U @ ap.point
        pts = np.repeat(ap.point[None, :], len(U), axis=0)
    elif ap.kind == FULL_DISK:
        R = ap.arcs[0].radius
        vals = U @ ap.point + R
        pts = ap.point + R * U
    else:
        V = ap.vertices
        dots = U @ V.T
        best = np.argmax(dots, axis=1)
        vals = dots[np.arange(len(U)), best]
        pts = V[best].copy()
        theta = np.arctan2(U[:, 1], U[:, 0])
        for arc in ap.arcs:
            inside = np.mod(theta - arc.start, TWO_PI) <= arc.extent
            if not np.any(inside):
                continue
            c = np.array(arc.center)
            cand = U @ c + arc.radius
            upd = inside & (cand > vals)
            vals = np.where(upd, cand, vals)
            pts[upd] = c + arc.radius * U[upd]
    if single:
        return float(vals[0]), pts[0]
    return vals, pts


def contains_2d(ap: ArcPolygon, y, eps: float = DEFAULT_TOL.exact_eps) -> str:
    """Classify ``y`` as inside, on the boundary of, or outside the region."""
    if ap.kind == EMPTY:
        return OUTSIDE
    y = np.asarray(y, dtype=float)
    slack = np.linalg.norm(ap.generators - y, axis=1) - ap.radii
    worst = float(np.max(slack))
    if worst > eps:
        return OUTSIDE
    if worst >= -eps or ap.kind == SINGLE_POINT:
        return BOUNDARY
    return INSIDE


def nearest_point_2d(ap: ArcPolygon, y) -> np.ndarray:
    """Euclidean projection of ``y`` onto the region."""
    y = np.asarray(y, dtype=float)
    if ap.kind == EMPTY:
        raise ValueError("projection onto an empty region")
    if ap.kind == SINGLE_POINT:
        return ap.point.copy()
    if contains_2d(ap, y, eps=0.0) != OUTSIDE:
        return y.copy()
    cands = [v for v in ap.vertices]
    for arc in ap.arcs:
        c = np.array(arc.center)
        diff = y - c
        dist = np.linalg.norm(diff)
        if dist == 0.0:
            continue
        if arc.extent >= TWO_PI or arc.contains_direction(math.atan2(diff[1], diff[0])):
            cands.append(c + arc.radius * diff / dist)
    cands = np.array(cands)
    return cands[int(np.argmin(np.linalg.norm(cands - y, axis=1)))]


def ball_hull_2d(config: PointConfig, eps: float = DEFAULT_TOL.exact_eps) -> ArcPolygon:
    """The r-ball convex hull of a planar point set.

    Uses ``conv_r P = (P^r)^r``: the hull is the disk intersection generated by
    the vertices of ``P^r``.  An empty ``P^r`` gives an empty hull.
    """
    poly = disk_intersection(config, eps)
    r = config.radius
    if poly.kind == EMPTY:
        return poly
    if poly.kind == FULL_DISK:
        p = poly.point
        return ArcPolygon(r, SINGLE_POINT, p.reshape(1, 2), (), p.reshape(1, 2), np.full(1, r), point=p.copy())
    if poly.kind == SINGLE_POINT:
        c = poly.point
        arc = Arc((float(c[0]), float(c[1])), -math.pi, TWO_PI, r, 0)
        return ArcPolygon(r, FULL_DISK, np.zeros((0, 2)), (arc,), c.reshape(1, 2), np.full(1, r), point=c.copy())
    hull = disk_intersection(PointConfig(2, r, poly.vertices), eps)
    if hull.kind != PROPER:
        raise ArithmeticError(f"hull of a proper region came out {hull.kind!r}")
    return hull
