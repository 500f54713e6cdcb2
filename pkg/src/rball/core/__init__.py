from .constants import (
    ball_profile,
    intrinsic_ball_constant,
    sphere_area,
    steiner_eval,
    unit_ball_volume,
)
from .meb import circumball, minimal_enclosing_ball, support_weights
from .measures import (
    cap_lateral_area,
    cap_volume,
    lens_measures,
    lens_support,
    mean_width_factor,
    spindle_measures,
    spindle_support,
)
from .types import (
    DEFAULT_TOL,
    BallSpec,
    IntrinsicProfile,
    LensSpec,
    PointConfig,
    SpindleSpec,
    ToleranceProfile,
)

__all__ = [
    "BallSpec",
    "DEFAULT_TOL",
    "IntrinsicProfile",
    "LensSpec",
    "PointConfig",
    "SpindleSpec",
    "ToleranceProfile",
    "ball_profile",
    "cap_lateral_area",
    "cap_volume",
    "circumball",
    "intrinsic_ball_constant",
    "lens_measures",
    "lens_support",
    "mean_width_factor",
    "minimal_enclosing_ball",
    "sphere_area",
    "spindle_measures",
    "spindle_support",
    "steiner_eval",
    "support_weights",
    "unit_ball_volume",
]
