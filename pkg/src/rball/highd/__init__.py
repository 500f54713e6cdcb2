from .hull import OuterHullApprox, hull_outer_approx
from .montecarlo import (
    inside_all,
    mc_compare_volumes,
    mc_surface_polyhedron,
    mc_volume_polyhedron,
    mean_width_polyhedron,
    sampling_ball,
)
from .polyhedron import (
    ConvergenceError,
    EmptyBodyError,
    SupportSolver,
    feasibility_residual,
    inradius_dual,
    member_polyhedron,
    project_polyhedron,
    require_nonempty,
    stationarity_residual,
    support_by_ascent,
    support_polyhedron,
)
from .sampling import Estimate, derive_seed, fresh_seed, sphere_directions, substream

__all__ = [
    "ConvergenceError",
    "EmptyBodyError",
    "Estimate",
    "OuterHullApprox",
    "SupportSolver",
    "derive_seed",
    "feasibility_residual",
    "fresh_seed",
    "hull_outer_approx",
    "inradius_dual",
    "inside_all",
    "mc_compare_volumes",
    "mc_surface_polyhedron",
    "mc_volume_polyhedron",
    "mean_width_polyhedron",
    "member_polyhedron",
    "project_polyhedron",
    "require_nonempty",
    "sampling_ball",
    "sphere_directions",
    "stationarity_residual",
    "substream",
    "support_by_ascent",
    "support_polyhedron",
]
