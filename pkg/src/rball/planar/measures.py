"""Area, perimeter, inradius and circumradius of arc polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.meb import minimal_enclosing_ball
from .arcpoly import FULL_DISK, PROPER, SINGLE_POINT, TWO_PI, ArcPolygon

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PlanarMeasures:
    area: float
    perimeter: float
    inradius: float
    incenter: np.ndarray
    circumradius: float
    circumcenter: np.ndarray
    inradius_direct: float
    inradius_gap: float

    @property
    def v1(self) -> float:
        return 0.5 * self.perimeter

    def to_dict(self) -> dict:
        return {
            "area": self.area,
            "perimeter": self.perimeter,
            "V1": self.v1,
            "V2": self.area,
            "inradius": self.inradius,
            "incenter": self.incenter.tolist(),
            "circumradius": self.circumradius,
            "circumcenter": self.circumcenter.tolist(),
            "inradius_direct": self.inradius_direct,
        }


def golden_min(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Minimize a unimodal function on ``[lo, hi]`` down to bracket width ``tol``."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc
    return d, fd


def minimize_2d(F, box, tol: float) -> tuple[np.ndarray, float]:
    """Minimize a convex function of two variables by nested golden-section search."""
    (x0, x1), (y0, y1) = box

    def inner(x):
        return golden_min(lambda y: F(x, y), y0, y1, tol)[1]

    x, _ = golden_min(inner, x0, x1, tol)
    y, val = golden_min(lambda y: F(x, y), y0, y1, tol)
    return np.array([x, y]), val


def _bounding_box(ap: ArcPolygon, pad: float):
    from .ops import support_2d

    dirs = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    h = support_2d(ap, dirs)[0]
    return (-h[1] - pad, h[0] + pad), (-h[3] - pad, h[2] + pad)


def chebyshev_center(ap: ArcPolygon, tol: float = 1e-11) -> tuple[np.ndarray, float, float]:
    """Largest inscribed disk, by direct maximization of ``min_i (R_i - |x - c_i|)``.

    Returns (center, radius, gap) where ``gap`` bounds the error of the radius
    (the objective is 1-Lipschitz, so the final bracket widths bound it).
    """
    gens = [(float(c[0]), float(c[1]), float(R)) for c, R in zip(ap.generators, ap.radii)]
    if ap.kind == PROPER and "extreme_generators" in ap.meta:
        gens = [(float(c[0]), float(c[1]), ap.r) for c in ap.meta["extreme_generators"]]
    hypot = math.hypot

    def F(x, y):
        return max(hypot(x - cx, y - cy) - R for cx, cy, R in gens)

    scale = max(float(np.max(ap.radii)), 1.0)
    box = _bounding_box(ap, 1e-9 * scale)
    center, val = minimize_2d(F, box, tol * scale)
    return center, -val, 2.0 * tol * scale


def _farthest_distance(ap: ArcPolygon, c: np.ndarray) -> float:
    best = 0.0
    if len(ap.vertices):
        best = float(np.max(np.linalg.norm(ap.vertices - c, axis=1)))
    for arc in ap.arcs:
        dx, dy = arc.center[0] - c[0], arc.center[1] - c[1]
        dist = math.hypot(dx, dy)
        if dist == 0.0 or arc.contains_direction(math.atan2(dy, dx)):
            best = max(best, dist + arc.radius)
    return best


def circumball_2d(ap: ArcPolygon, tol: float = 1e-11) -> tuple[np.ndarray, float]:
    """Smallest disk containing the region.

    The vertex MEB is a lower bound; when no arc bulges beyond it, the bound is
    attained and certified.  Otherwise the convex farthest-distance function is
    minimized directly.
    """
    if ap.kind == FULL_DISK:
        return ap.point.copy(), ap.arcs[0].radius
    if len(ap.vertices) == 0:
        raise ValueError("region has no vertices")
    ball = minimal_enclosing_ball(ap.vertices, 2)
    scale = max(float(np.max(ap.radii)), 1.0)
    far = _farthest_distance(ap, ball.center)
    if far <= ball.radius + 1e-12 * scale:
        return ball.center, ball.radius

    def F(x, y):
        return _farthest_distance(ap, np.array([x, y]))

    box = _bounding_box(ap, 0.0)
    center, val = minimize_2d(F, box, tol * scale)
    return center, val


def area_perimeter(ap: ArcPolygon) -> tuple[float, float]:
    """Area (shoelace plus circular segments) and perimeter of a bounded region."""
    if ap.kind == FULL_DISK:
        R = ap.arcs[0].radius
        return math.pi * R * R, TWO_PI * R
    if ap.kind == SINGLE_POINT:
        return 0.0, 0.0
    if ap.kind != PROPER:
        raise ValueError(f"area of a {ap.kind!r} region is undefined")
    v = ap.vertices
    x, y = v[:, 0], v[:, 1]
    area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    perimeter = 0.0
    for arc in ap.arcs:
        area += 0.5 * arc.radius**2 * (arc.extent - math.sin(arc.extent))
        perimeter += arc.radius * arc.extent
    return area, perimeter


def measures(ap: ArcPolygon, tol: float = 1e-11) -> PlanarMeasures:
    """Area, perimeter, inradius and circumradius of a bounded arc polygon.

    The inradius is computed twice: as ``r`` minus the circumradius of the
    generators (congruent disks only) and by direct Chebyshev-center search.
    The reported value is the first; ``inradius_direct`` holds the second.
    """
    if ap.kind == FULL_DISK:
        R = ap.arcs[0].radius
        c = ap.point.copy()
        return PlanarMeasures(math.pi * R * R, TWO_PI * R, R, c, R, c.copy(), R, 0.0)
    if ap.kind != PROPER:
        raise ValueError(f"measures need a proper region or full disk, got {ap.kind!r}")
    area, perimeter = area_perimeter(ap)
    direct_center, direct_r, gap = chebyshev_center(ap, tol)
    if ap.is_mixed:
        incenter, inradius = direct_center, direct_r
    else:
        ball = minimal_enclosing_ball(ap.generators, 2)
        incenter, inradius = ball.center, ap.r - ball.radius
    cc, cr = circumball_2d(ap, tol)
    return PlanarMeasures(area, perimeter, inradius, incenter, cr, cc, direct_r, gap)
