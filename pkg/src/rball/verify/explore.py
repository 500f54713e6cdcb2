"""Hill-climbing search for configurations that shrink a conjectured margin.

Conjecture 1 compares ``V_k(P^r)`` against the lens with inradius ``r - r0``;
conjecture 2 compares the spindle ``S_{r, r0, d}`` against ``V_k(conv_r P)``.
The search lowers ``margin = rhs - lhs`` by perturbing points and
renormalizing the circumradius.  It never claims a conjecture true: the best
candidate is re-checked with the escalating checker, and only a failure there
counts as a violation.
"""

from __future__ import annotations

import datetime
import time
from dataclasses import dataclass, field


from ..core.measures import lens_measures, spindle_measures
from ..core.types import LensSpec, PointConfig, SpindleSpec
from ..highd.montecarlo import mc_surface_polyhedron, mean_width_polyhedron
from ..highd.sampling import derive_seed, substream
from ..planar.arcpoly import disk_intersection
from ..planar.measures import area_perimeter
from ..planar.ops import ball_hull_2d
from ..records import InstanceSpec, SuiteReport
from .checks import check_conjecture1, check_conjecture2, hull_intrinsic_estimates
from .generators import gen_config, normalize

PATIENCE = 20
MIN_STEP = 1e-6
SEARCH_SAMPLES = 50_000
SEARCH_DIRECTIONS = 200
SEARCH_CENTERS = 64


@dataclass
class Candidate:
    config: PointConfig
    margin: float
    restart: int
    iteration: int


@dataclass
class _Search:
    conjecture: int
    dim: int
    k: int
    r: float
    r0: float
    seed: int
    evaluations: int = 0
    trajectory: list = field(default_factory=list)

    def margin(self, config: PointConfig) -> float:
        """Search objective.

        In d >= 3 it is a Monte Carlo estimate with a frozen seed, so steps are
        compared under common noise.  Keeping the minimum over many noisy
        values biases the search margin low; the re-check of the best
        configuration at full accuracy is the one that counts.
        """
        self.evaluations += 1
        d, k, r, r0 = self.dim, self.k, self.r, self.r0
        if self.conjecture == 1:
            rhs = lens_measures(LensSpec(d, r, r - r0)).values[k]
            if d == 2:
                area, perimeter = area_perimeter(disk_intersection(config))
                return rhs - (area if k == 2 else perimeter / 2.0)
            seed = derive_seed(self.seed, 0x5EA)
            if k == 1:
                lhs = mean_width_polyhedron(config, SEARCH_DIRECTIONS, seed).value
            else:
                lhs = mc_surface_polyhedron(config, SEARCH_SAMPLES, seed)[1].value
            return rhs - lhs
        lhs = spindle_measures(SpindleSpec(d, r, r0)).values[k]
        if d == 2:
            area, perimeter = area_perimeter(ball_hull_2d(config))
            return (area if k == 2 else perimeter / 2.0) - lhs
        est = hull_intrinsic_estimates(config, k, [SEARCH_CENTERS], SEARCH_SAMPLES,
                                       derive_seed(self.seed, 0x5EA), SEARCH_DIRECTIONS)[-1]
        return est.value - lhs


def explore_conjectures(conjecture: int, dim: int, k: int, iterations: int, seed: int,
                        n: int = 6, r: float = 2.0, r0: float = 1.0, restarts: int = 4,
                        samples: int = 100_000, tol: float = 1e-9) -> SuiteReport:
    """Multi-start hill-climbing on the margin of conjecture 1 or 2.

    Each restart begins at a fresh random configuration.  A step moves every
    point by Gaussian noise of scale ``sigma * r0`` and renormalizes; it is kept
    when the margin drops.  After ``PATIENCE`` consecutive rejections sigma
    halves.  The iteration budget is split evenly between restarts.  The
    report holds one record per restart (its best configuration, re-checked at
    full accuracy), the trajectory of the running minimum, and the replay seeds.
    """
    if conjecture not in (1, 2):
        raise ValueError("conjecture must be 1 or 2")
    if dim not in (2, 3):
        raise ValueError("exploration supports d in {2, 3}")
    if k not in {1, dim - 1}:
        raise ValueError(f"k must be 1 or d-1 for d={dim}")
    if not r > r0 > 0:
        raise ValueError("need r > r0 > 0")
    if n < 2 or iterations < 1 or restarts < 1:
        raise ValueError("need n >= 2, iterations >= 1 and restarts >= 1")
    started = time.perf_counter()
    search = _Search(conjecture, dim, k, r, r0, seed)
    per_restart = max(1, iterations // restarts)
    best_overall: Candidate | None = None
    records = []
    replay = []
    for restart in range(restarts):
        start_seed = derive_seed(seed, restart)
        rng = substream(seed, restart, 0x57E9)
        config = gen_config(InstanceSpec(dim, n, r0, r, start_seed, trial=restart))
        current = search.margin(config)
        best = Candidate(config, current, restart, 0)
        sigma, rejections = 0.1, 0
        for it in range(1, per_restart + 1):
            trial_pts = normalize(config.points + sigma * r0 * rng.standard_normal(config.points.shape), r0)
            trial = config.with_points(trial_pts)
            value = search.margin(trial)
            if value < current:
                config, current, rejections = trial, value, 0
                if value < best.margin:
                    best = Candidate(config, value, restart, it)
            else:
                rejections += 1
                if rejections >= PATIENCE:
                    sigma, rejections = sigma / 2.0, 0
            running = min(current, best_overall.margin if best_overall else current)
            search.trajectory.append(running)
            if sigma < MIN_STEP:
                break
        if best_overall is None or best.margin < best_overall.margin:
            best_overall = best
        replay.append({"restart": restart, "start_seed": start_seed, "best_iteration": best.iteration})
        check = check_conjecture1 if conjecture == 1 else check_conjecture2
        record = check(best.config, k, samples=samples, seed=derive_seed(seed, restart, 0xC4),
                       instance={"restart": restart, "config": best.config.to_dict()}, tol=tol)
        record.extra["search_margin"] = best.margin
        records.append(record)
    report = SuiteReport(
        suite=f"explore-conjecture{conjecture}",
        parameters={"conjecture": conjecture, "dim": dim, "k": k, "iterations": iterations, "n": n,
                    "r": r, "r0": r0, "restarts": restarts, "samples": samples, "tol": tol},
        seed=seed,
        records=records,
        notes={
            "trajectory": search.trajectory,
            "best_candidate": {"config": best_overall.config.to_dict(), "search_margin": best_overall.margin,
                               "restart": best_overall.restart, "iteration": best_overall.iteration},
            "replay_seeds": replay,
            "evaluations": search.evaluations,
            "claim": "none: exploration output, not a proof",
        },
    )
    report.runtime = time.perf_counter() - started
    report.wall_clock = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return report
