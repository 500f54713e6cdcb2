"""One checker per inequality or identity; each returns a :class:`SuiteRecord`.

Conventions: ``margin = rhs - lhs``; exact checks use an absolute tolerance,
Monte Carlo checks a band of ``mc_sigma`` smoothed standard errors.  A Monte
Carlo failure is never reported on first sight: it is rerun at ten times the
samples on a fresh substream and only a failure of the rerun stands.
"""

from __future__ import annotations

import math

import numpy as np

from ..core.constants import intrinsic_ball_constant, unit_ball_volume
from ..core.meb import minimal_enclosing_ball
from ..core.measures import lens_measures, spindle_measures
from ..core.types import DEFAULT_TOL, LensSpec, PointConfig, SpindleSpec
from ..highd.hull import hull_outer_approx
from ..highd.montecarlo import mc_compare_volumes, mc_surface_polyhedron, mean_width_polyhedron
from ..highd.polyhedron import SupportSolver, inradius_dual
from ..highd.sampling import derive_seed, sphere_directions
from ..planar.arcpoly import FULL_DISK, PROPER, disk_intersection, mixed_disk_intersection
from ..planar.measures import area_perimeter, chebyshev_center, circumball_2d
from ..planar.ops import ball_hull_2d
from ..records import FAIL, INCONCLUSIVE, PASS, SuiteRecord
from ..sphere import SphericalConfig, mc_neighborhood_measure, mc_voronoi_density, spherical_cap_measure
from .generators import CoveringPiece, gen_covering, gen_simplex_centered

EXACT_TOL = DEFAULT_TOL.exact_eps
SIGMA = DEFAULT_TOL.mc_sigma
ESCALATION = 10
DEFAULT_SAMPLES = 100_000
DEFAULT_DIRECTIONS = 1000
DEFAULT_PREFIXES = (128, 256, 512, 1024)


def _instance(config: PointConfig, instance: dict | None) -> dict:
    return instance if instance is not None else {"config": config.to_dict()}


def circumradius_of(config: PointConfig):
    return minimal_enclosing_ball(config.points, config.dim)


def escalate(run, samples: int, seed: int) -> SuiteRecord:
    """Run a stochastic check; rerun a failure at ``ESCALATION`` times the samples."""
    first = run(samples, seed)
    if first.verdict != FAIL or not first.stochastic:
        return first
    again = run(samples * ESCALATION, derive_seed(seed, 0xE5))
    again.extra["escalated"] = True
    again.extra["first_pass"] = first.to_dict()
    return again


def _lens_bound_spec(config: PointConfig, factor: float) -> LensSpec:
    r = config.radius
    r0 = circumradius_of(config).radius
    return LensSpec(config.dim, r, r - factor * r0)


def _lens_about(config: PointConfig, spec: LensSpec) -> PointConfig:
    """The lens ``spec`` placed at the circumcenter of ``config``, axis toward a support point."""
    ball = circumradius_of(config)
    axis = config.points[ball.support[0]] - ball.center
    norm = np.linalg.norm(axis)
    axis = axis / norm if norm > 0 else np.eye(config.dim)[0]
    a = spec.offset
    return PointConfig(config.dim, config.radius, np.array([ball.center + a * axis, ball.center - a * axis]))


def _volume_vs_lens(config: PointConfig, spec: LensSpec, samples: int, seed: int, instance) -> SuiteRecord:
    """``V_d(P^r) <= V_d(lens)`` with a control-variate estimate of the left side.

    Both bodies are sampled from one ball.  The lens volume is known by
    quadrature, so ``V(P^r) = V(lens) - E[1_lens - 1_P]`` has a paired
    error that shrinks as the two bodies overlap.
    """
    rhs = lens_measures(spec).volume
    lens_cfg = _lens_about(config, spec)
    ball = circumradius_of(config)
    radius = spec.circumradius
    plain, lens_mc, diff = mc_compare_volumes(config, lens_cfg, samples, seed, ball.center, radius)
    return SuiteRecord(
        instance=instance,
        lhs=rhs - diff.value,
        rhs=rhs,
        tolerance=SIGMA * diff.noise,
        stochastic=True,
        lhs_stderr=diff.stderr,
        extra={
            "method": "mc-control-variate",
            "plain_mc": plain.to_dict(),
            "lens_mc": lens_mc.to_dict(),
            "lens_mc_vs_quadrature": lens_mc.value - rhs,
        },
    )


def check_theorem1(config: PointConfig, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                   instance: dict | None = None, tol: float = EXACT_TOL) -> SuiteRecord:
    """``V_d(P^r) <= V_d(L_{r, r - r0, d})``."""
    instance = _instance(config, instance)
    spec = _lens_bound_spec(config, 1.0)
    if config.dim == 2:
        area, _ = area_perimeter(disk_intersection(config))
        return SuiteRecord(instance, area, lens_measures(spec).volume, tol)
    return escalate(lambda n, s: _volume_vs_lens(config, spec, n, s, instance), samples, seed)


def _intrinsic_vs_lens(config: PointConfig, k: int, factor: float, samples: int, seed: int,
                       directions: int, instance: dict, tol: float) -> SuiteRecord:
    d = config.dim
    if k not in {1, d - 1, d}:
        raise ValueError(f"k must be 1, d-1 or d; got {k}")
    spec = _lens_bound_spec(config, factor)
    rhs = lens_measures(spec).values[k]
    if d == 2:
        area, perimeter = area_perimeter(disk_intersection(config))
        lhs = area if k == 2 else perimeter / 2.0
        return SuiteRecord(instance, lhs, rhs, tol, extra={"lens_inradius": spec.rho})

    def run(n, s):
        if k == d:
            rec = _volume_vs_lens(config, spec, n, s, instance)
        else:
            if k == d - 1:
                est = mc_surface_polyhedron(config, n, s)[1]
            else:
                est = mean_width_polyhedron(config, directions, s)
            rec = SuiteRecord(instance, est.value, rhs, SIGMA * est.noise, stochastic=True,
                              lhs_stderr=est.stderr, extra={"estimate": est.to_dict()})
        rec.extra["lens_inradius"] = spec.rho
        return rec

    return escalate(run, samples, seed)


def check_theorem2(config: PointConfig, k: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                   directions: int = DEFAULT_DIRECTIONS, instance: dict | None = None,
                   tol: float = EXACT_TOL) -> SuiteRecord:
    """``V_k(P^r) <= V_k(L_{r, r - sqrt((d+1)/(2d)) r0, d})``."""
    d = config.dim
    jung = math.sqrt((d + 1) / (2.0 * d))
    return _intrinsic_vs_lens(config, k, jung, samples, seed, directions, _instance(config, instance), tol)


def check_conjecture1(config: PointConfig, k: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                      directions: int = DEFAULT_DIRECTIONS, instance: dict | None = None,
                      tol: float = EXACT_TOL) -> SuiteRecord:
    """``V_k(P^r) <= V_k(L_{r, r - r0, d})``; a failure here is a counterexample candidate."""
    rec = _intrinsic_vs_lens(config, k, 1.0, samples, seed, directions, _instance(config, instance), tol)
    if rec.verdict == FAIL:
        rec.extra["counterexample_candidate"] = True
    return rec


def _stabilized(ests) -> bool:
    last, prev = ests[-1], ests[-2]
    return abs(prev.value - last.value) <= SIGMA * math.hypot(prev.noise, last.noise)


def _outer_record(instance, lhs: float, ests, extra: dict) -> SuiteRecord:
    """Verdict against an outer approximation sequence ``ests`` (nonincreasing in m).

    The approximations overestimate, so ``rhs < lhs`` beyond noise refutes
    the inequality outright.  A pass additionally needs the sequence to have
    stabilized within the noise.
    """
    last = ests[-1]
    rec = SuiteRecord(instance, lhs, last.value, SIGMA * last.noise, stochastic=True,
                      rhs_stderr=last.stderr, extra=extra)
    stable = len(ests) < 2 or _stabilized(ests)
    rec.extra["stabilized"] = stable
    rec.extra["rhs_by_m"] = [e.value for e in ests]
    if rec.verdict == PASS and not stable:
        rec.verdict = INCONCLUSIVE
    return rec


def _two_point_spindle(config: PointConfig):
    """Measures of ``conv_r P`` when ``P`` has two distinct points: the spindle through them."""
    pts = config.effective_points()
    if len(pts) != 2:
        return None
    half = float(np.linalg.norm(pts[0] - pts[1])) / 2.0
    return spindle_measures(SpindleSpec(config.dim, config.radius, half))


def check_theorem3(config: PointConfig, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                   prefixes=DEFAULT_PREFIXES, instance: dict | None = None,
                   tol: float = EXACT_TOL) -> SuiteRecord:
    """``V_d(S_{r, r0, d}) <= V_d(conv_r P)``."""
    instance = _instance(config, instance)
    r0 = circumradius_of(config).radius
    lhs = spindle_measures(SpindleSpec(config.dim, config.radius, r0)).volume
    if config.dim == 2:
        area, _ = area_perimeter(ball_hull_2d(config))
        return SuiteRecord(instance, lhs, area, tol)
    two = _two_point_spindle(config)
    if two is not None:
        rhs = two.volume
        return SuiteRecord(instance, lhs, rhs, max(tol, 1e-9 * abs(rhs)), extra={"route": "two-point-spindle"})
    prefixes = sorted(prefixes)

    def run(n, s):
        ests = hull_intrinsic_estimates(config, config.dim, prefixes, n, s)
        return _outer_record(instance, lhs, ests, {"prefixes": prefixes})

    return escalate(run, samples, seed)


def corollary_constant(d: int, k: int) -> float:
    """``C(d, k) omega_d^(1 - k/d) / omega_(d-k)``."""
    return math.comb(d, k) * unit_ball_volume(d) ** (1.0 - k / d) / unit_ball_volume(d - k)


def corollary_constant_check(d: int, k: int) -> float:
    """Relative gap between the constant applied to the unit ball and ``V_k`` of the unit ball."""
    via_constant = corollary_constant(d, k) * unit_ball_volume(d) ** (k / d)
    exact = intrinsic_ball_constant(d, k)
    return abs(via_constant - exact) / exact


def check_corollary_intrinsic(config: PointConfig, k: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                              directions: int = DEFAULT_DIRECTIONS, prefixes=(128, 256),
                              instance: dict | None = None, tol: float = EXACT_TOL) -> SuiteRecord:
    """Lower bounds for ``V_k(conv_r P)`` through the spindle.

    The general bound is ``C(d,k) omega_d^(1-k/d) / omega_(d-k) * V_d(S)^(k/d)``.
    In the plane with ``k = 1`` the sharper ``V_1(S) <= V_1(conv_r P)`` is
    checked, and the general bound is recorded alongside.
    """
    d = config.dim
    if k not in {1, d - 1}:
        raise ValueError(f"k must be 1 or d-1; got {k}")
    instance = _instance(config, instance)
    r, r0 = config.radius, circumradius_of(config).radius
    spindle = spindle_measures(SpindleSpec(d, r, r0))
    general = corollary_constant(d, k) * spindle.volume ** (k / d)
    extra = {"general_bound": general, "constant_gap": corollary_constant_check(d, k)}
    if d == 2:
        _, perimeter = area_perimeter(ball_hull_2d(config))
        lhs = max(spindle.values[1], general)
        extra["spindle_v1"] = spindle.values[1]
        return SuiteRecord(instance, lhs, perimeter / 2.0, tol, extra=extra)
    two = _two_point_spindle(config)
    if two is not None:
        rhs = two.values[k]
        return SuiteRecord(instance, general, rhs, max(tol, 1e-9 * abs(rhs)), extra=dict(extra, route="two-point-spindle"))

    def run(n, s):
        ests = hull_intrinsic_estimates(config, k, sorted(prefixes), n, s, directions)
        return _outer_record(instance, general, ests, dict(extra, prefixes=sorted(prefixes)))

    return escalate(run, samples, seed)


def hull_intrinsic_estimates(config: PointConfig, k: int, prefixes, samples: int, seed: int,
                             directions: int = DEFAULT_DIRECTIONS):
    """Estimates of ``V_k`` of nested outer approximations of ``conv_r P``, one per prefix."""
    d = config.dim
    approx = hull_outer_approx(config, max(prefixes), seed)
    if k == d:
        return approx.nested_volumes(prefixes, samples, derive_seed(seed, 1))
    ests = []
    for m in prefixes:
        body = approx.induced(m)
        if k == 1:
            ests.append(mean_width_polyhedron(body, directions, derive_seed(seed, 2)))
        elif k == d - 1:
            ests.append(mc_surface_polyhedron(body, samples, derive_seed(seed, 2))[1])
        else:
            raise ValueError(f"k must be 1, d-1 or d; got {k}")
    return ests


def check_conjecture2(config: PointConfig, k: int, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                      directions: int = DEFAULT_DIRECTIONS, prefixes=(128, 256),
                      instance: dict | None = None, tol: float = EXACT_TOL) -> SuiteRecord:
    """``V_k(S_{r, r0, d}) <= V_k(conv_r P)``; a failure here is a counterexample candidate.

    The outer approximations overestimate ``conv_r P``, so a failure against
    them is one-sided evidence of a genuine violation.
    """
    d = config.dim
    if k not in {1, d - 1, d}:
        raise ValueError(f"k must be 1, d-1 or d; got {k}")
    instance = _instance(config, instance)
    r, r0 = config.radius, circumradius_of(config).radius
    lhs = spindle_measures(SpindleSpec(d, r, r0)).values[k]
    if d == 2:
        area, perimeter = area_perimeter(ball_hull_2d(config))
        rec = SuiteRecord(instance, lhs, area if k == 2 else perimeter / 2.0, tol)
    else:
        rec = escalate(
            lambda n, s: _outer_record(instance, lhs, hull_intrinsic_estimates(config, k, sorted(prefixes), n, s, directions),
                                       {"prefixes": sorted(prefixes)}),
            samples, seed,
        )
    if rec.verdict == FAIL:
        rec.extra["counterexample_candidate"] = True
    return rec


def piece_inradius(piece: CoveringPiece, r: float) -> float:
    """Inradius of ``piece ∩ B[o, r]`` from the mixed-radius arc polygon."""
    centers = np.vstack([piece.generators, np.zeros((1, 2))])
    radii = np.append(np.full(len(piece.generators), piece.radius), r)
    ap = mixed_disk_intersection(centers, radii)
    if ap.kind == FULL_DISK:
        return ap.arcs[0].radius
    if ap.kind != PROPER:
        raise ArithmeticError(f"covering piece meets the disk in a {ap.kind!r} set")
    return chebyshev_center(ap)[1]


def certify_covering(pieces: list[CoveringPiece], r: float, seed: int, grid: int = 201,
                     samples: int = 20_000) -> tuple[bool, np.ndarray | None]:
    """Check every grid point and random point of ``B[o, r]`` against the pieces."""
    axis = np.linspace(-r, r, grid)
    G = np.array(np.meshgrid(axis, axis)).reshape(2, -1).T
    G = G[np.einsum("ij,ij->i", G, G) <= r * r]
    rng = np.random.default_rng(derive_seed(seed, 0xCE))
    t = rng.uniform(0.0, 2.0 * math.pi, samples)
    rad = r * np.sqrt(rng.random(samples))
    X = np.vstack([G, np.column_stack([rad * np.cos(t), rad * np.sin(t)])])
    covered = np.zeros(len(X), dtype=bool)
    for piece in pieces:
        covered |= piece.contains(X)
    if covered.all():
        return True, None
    return False, X[~covered][0]


def check_kadets(r: float, n: int, seed: int, instance: dict | None = None, tol: float = 1e-6,
                 retries: int = 10) -> SuiteRecord:
    """``r <= sum_i r_in(C_i ∩ B)`` for a certified covering of ``B = B[o, r]`` in the plane."""
    for attempt in range(retries):
        sub = derive_seed(seed, attempt)
        pieces, e = gen_covering(r, n, sub)
        ok, _ = certify_covering(pieces, r, sub)
        if ok:
            break
    else:
        raise RuntimeError("could not certify a covering")
    inradii = [piece_inradius(p, r) for p in pieces]
    instance = instance if instance is not None else {"r": r, "n": n, "seed": seed}
    return SuiteRecord(
        instance, r, float(sum(inradii)), tol,
        extra={
            "inradii": inradii,
            "direction": e.tolist(),
            "pieces": [p.to_dict() for p in pieces],
            "attempt": attempt,
        },
    )


def symmetral_radius(points: np.ndarray) -> float:
    """``r_cr^o(M_o(Q))``: the largest norm over the pair differences ``(p_i - p_j) / 2``."""
    diffs = points[:, None, :] - points[None, :, :]
    return float(np.max(np.linalg.norm(diffs, axis=2))) / 2.0


def check_jung_symmetral(d: int, l: int, r0: float, seed: int, simplex=None,
                         instance: dict | None = None, tol: float = EXACT_TOL) -> SuiteRecord:
    """``sqrt((d+1)/(2d)) r0 <= sqrt((l+1)/(2l)) r0 <= diam(Q) / 2`` for a centered l-simplex Q."""
    simplex = simplex if simplex is not None else gen_simplex_centered(d, l, r0, seed)
    Q = simplex.points
    half_diam = float(max(np.linalg.norm(a - b) for a in Q for b in Q)) / 2.0
    bound_l = math.sqrt((l + 1) / (2.0 * l)) * r0
    bound_d = math.sqrt((d + 1) / (2.0 * d)) * r0
    instance = instance if instance is not None else {"dim": d, "l": l, "r0": r0, "seed": seed}
    return SuiteRecord(
        instance, max(bound_l, bound_d), half_diam, tol,
        extra={
            "bound_l": bound_l,
            "bound_d": bound_d,
            "symmetral_radius": symmetral_radius(Q),
            "symmetral_radius_gap": abs(symmetral_radius(Q) - half_diam),
            "barycentric": simplex.barycentric.tolist(),
        },
    )


def check_inradius_identity(config: PointConfig, instance: dict | None = None,
                            tol: float | None = None) -> SuiteRecord:
    """``r_in(P^r) = r - r_cr(P)``, against an independent inradius computation.

    In the plane the independent route is the Chebyshev-center search over the
    arc polygon; in higher dimension it is the dual enclosing-ball program.
    """
    instance = _instance(config, instance)
    r = config.radius
    ball = circumradius_of(config)
    identity = r - ball.radius
    if config.dim == 2:
        ap = disk_intersection(config)
        _, direct, gap = chebyshev_center(ap)
        tol = EXACT_TOL if tol is None else tol
        route = "chebyshev-center"
    else:
        _, direct, gap = inradius_dual(config)
        tol = 1e-7 if tol is None else tol
        route = "dual-enclosing-ball"
    return SuiteRecord(instance, abs(identity - direct), 0.0, tol,
                       extra={"identity": identity, "direct": direct, "certified_gap": gap, "route": route})


def check_max_cr(config: PointConfig, directions: int = 2000, seed: int = 0,
                 instance: dict | None = None, tol: float = EXACT_TOL) -> SuiteRecord:
    """``P^r ⊆ B[c, sqrt(r^2 - r0^2)]`` about the circumcenter ``c``.

    In the plane the left side is the certified circumradius of the arc
    polygon.  In higher dimension it is the largest ``h(u) - <c, u>`` over
    sampled directions, with exact support values.
    """
    instance = _instance(config, instance)
    ball = circumradius_of(config)
    bound = math.sqrt(max(config.radius**2 - ball.radius**2, 0.0))
    if config.dim == 2:
        lhs = circumball_2d(disk_intersection(config))[1]
        return SuiteRecord(instance, lhs, bound, tol, extra={"route": "arc-polygon"})
    U = sphere_directions(config.dim, directions, seed)
    h = SupportSolver(config).support(U)[0]
    reach = h - U @ ball.center
    worst = int(np.argmax(reach))
    return SuiteRecord(instance, float(reach[worst]), bound, tol,
                       witnesses={"direction": U[worst].tolist()}, extra={"route": "support", "directions": directions})


def check_sphere_lemma(config: SphericalConfig, samples: int, seed: int,
                       instance: dict | None = None) -> SuiteRecord:
    """``SV_d(X_eps) >= SV_d(X̂_eps) = 2 cap(eps)`` for hemisphere-free X."""
    instance = instance if instance is not None else config.to_dict()
    eps, d = config.epsilon, config.sphere_dim

    def run(n, s):
        est = mc_neighborhood_measure(config, n, s)
        pair = mc_neighborhood_measure(config.antipodal_pair(), n, s)
        return SuiteRecord(instance, 2.0 * spherical_cap_measure(d, eps), est.value, SIGMA * est.noise,
                           stochastic=True, rhs_stderr=est.stderr,
                           extra={"epsilon": eps, "estimate": est.to_dict(), "antipodal_mc": pair.to_dict()})

    return escalate(run, samples, seed)


def check_voronoi_density(config: SphericalConfig, samples: int, seed: int,
                          instance: dict | None = None) -> list[SuiteRecord]:
    """Per site: ``SV(B[x_i, eps] ∩ V_i) / SV(V_i) >= cap(eps) / SV(hemisphere)``."""
    instance = instance if instance is not None else config.to_dict()
    sites = mc_voronoi_density(config, samples, seed)

    def record(i, site, extra=None):
        return SuiteRecord(dict(instance, site=i), site.bound, site.ratio, SIGMA * site.ratio_stderr,
                           stochastic=True, rhs_stderr=site.ratio_stderr, extra=dict(site.to_dict(), **(extra or {})))

    out = [record(i, site) for i, site in enumerate(sites)]
    if any(rec.verdict == FAIL for rec in out):
        again = mc_voronoi_density(config, samples * ESCALATION, derive_seed(seed, 0xE5))
        out = [
            record(i, site, {"escalated": True, "first_pass": rec.to_dict()}) if rec.verdict == FAIL else rec
            for i, (rec, site) in enumerate(zip(out, again))
        ]
    return out
