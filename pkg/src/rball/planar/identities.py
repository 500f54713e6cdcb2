"""Planar support-function identities for the central symmetral and the r-ball hull."""

from __future__ import annotations

import math

import numpy as np

from ..core.types import PointConfig
from ..records import SuiteRecord
from .arcpoly import EMPTY, PROPER, SINGLE_POINT, disk_intersection
from .measures import measures
from .ops import ball_hull_2d, support_2d


def circle_directions(count: int = 360) -> np.ndarray:
    t = np.arange(count) * (2.0 * math.pi / count)
    return np.column_stack([np.cos(t), np.sin(t)])


def check_symmetral_2d(Q: PointConfig, directions: int = 360, tol: float = 1e-9,
                       instance: dict | None = None) -> SuiteRecord:
    """Compare the central symmetral of ``Q^r`` with the disk body of the pair midpoints.

    The symmetral's support is the half-width ``(h(u) + h(-u)) / 2`` of ``Q^r``;
    the other side is the support of the intersection of radius-r disks about
    every ``(p_i - p_j) / 2``.  ``lhs`` is the largest absolute difference.
    The signed extremes are kept in ``extra``: the inclusion of the symmetral
    in the midpoint body corresponds to ``min_signed >= -tol``.
    """
    poly = disk_intersection(Q)
    if poly.kind != PROPER:
        raise ValueError(f"symmetral check needs a proper Q^r, got {poly.kind!r}")
    pts = Q.effective_points()
    mids = np.array([(a - b) / 2.0 for a in pts for b in pts])
    body = disk_intersection(PointConfig(2, Q.radius, mids))
    U = circle_directions(directions)
    half_width = 0.5 * (support_2d(poly, U)[0] + support_2d(poly, -U)[0])
    diff = support_2d(body, U)[0] - half_width
    worst = int(np.argmax(np.abs(diff)))
    return SuiteRecord(
        instance=instance or {"config": Q.to_dict()},
        lhs=float(np.abs(diff[worst])),
        rhs=0.0,
        tolerance=tol,
        witnesses={"direction": U[worst].tolist()},
        extra={
            "max_signed": float(diff.max()),
            "min_signed": float(diff.min()),
            "inclusion_holds": bool(diff.min() >= -tol),
        },
    )


def check_minkowski_identity_2d(P: PointConfig, directions: int = 360, tol: float = 1e-9,
                                instance: dict | None = None) -> SuiteRecord:
    """Check ``h_hull(u) + h_poly(-u) = r`` and the perimeter sum ``2 pi r``.

    ``lhs`` is the larger of the support deviation and the perimeter-sum
    deviation.
    """
    poly = disk_intersection(P)
    if poly.kind == EMPTY or poly.kind == SINGLE_POINT:
        raise ValueError(f"Minkowski identity needs r_cr(P) < r, got {poly.kind!r}")
    hull = ball_hull_2d(P)
    r = P.radius
    U = circle_directions(directions)
    total = support_2d(hull, U)[0] + support_2d(poly, -U)[0]
    dev = np.abs(total - r)
    worst = int(np.argmax(dev))
    per_poly = measures(poly).perimeter
    per_hull = 0.0 if hull.kind == SINGLE_POINT else measures(hull).perimeter
    per_dev = abs(per_poly + per_hull - 2.0 * math.pi * r)
    return SuiteRecord(
        instance=instance or {"config": P.to_dict()},
        lhs=float(max(dev[worst], per_dev)),
        rhs=0.0,
        tolerance=tol,
        witnesses={"direction": U[worst].tolist()},
        extra={
            "support_deviation": float(dev[worst]),
            "perimeter_hull": per_hull,
            "perimeter_poly": per_poly,
            "perimeter_deviation": per_dev,
        },
    )
