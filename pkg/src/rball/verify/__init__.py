from .checks import (
    check_conjecture1,
    check_conjecture2,
    check_corollary_intrinsic,
    check_inradius_identity,
    check_jung_symmetral,
    check_kadets,
    check_max_cr,
    check_sphere_lemma,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    check_voronoi_density,
    escalate,
)
from .explore import explore_conjectures
from .generators import (
    gen_config,
    gen_covering,
    gen_hemisphere_free,
    gen_simplex_centered,
    normalize,
    regular_simplex,
)
from .suites import SUITES, resolve_params, run_suite

__all__ = [
    "SUITES",
    "check_conjecture1",
    "check_conjecture2",
    "check_corollary_intrinsic",
    "check_inradius_identity",
    "check_jung_symmetral",
    "check_kadets",
    "check_max_cr",
    "check_sphere_lemma",
    "check_theorem1",
    "check_theorem2",
    "check_theorem3",
    "check_voronoi_density",
    "escalate",
    "explore_conjectures",
    "gen_config",
    "gen_covering",
    "gen_hemisphere_free",
    "gen_simplex_centered",
    "normalize",
    "regular_simplex",
    "resolve_params",
    "run_suite",
]
