from .arcpoly import (
    EMPTY,
    FULL_DISK,
    PROPER,
    SINGLE_POINT,
    Arc,
    ArcPolygon,
    convex_hull_indices,
    disk_intersection,
    mixed_disk_intersection,
)
from .identities import check_minkowski_identity_2d, check_symmetral_2d, circle_directions
from .measures import PlanarMeasures, area_perimeter, chebyshev_center, circumball_2d, measures
from .ops import BOUNDARY, INSIDE, OUTSIDE, ball_hull_2d, contains_2d, nearest_point_2d, support_2d

__all__ = [
    "Arc",
    "ArcPolygon",
    "BOUNDARY",
    "EMPTY",
    "FULL_DISK",
    "INSIDE",
    "OUTSIDE",
    "PROPER",
    "PlanarMeasures",
    "SINGLE_POINT",
    "area_perimeter",
    "ball_hull_2d",
    "check_minkowski_identity_2d",
    "check_symmetral_2d",
    "circle_directions",
    "chebyshev_center",
    "circumball_2d",
    "contains_2d",
    "convex_hull_indices",
    "disk_intersection",
    "measures",
    "mixed_disk_intersection",
    "nearest_point_2d",
    "support_2d",
]
