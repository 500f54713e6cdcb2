"""Named suites: randomized trials of one checker, collected into a report.

Every trial draws from its own substream ``derive_seed(seed, trial)``, so the
report depends only on (suite, parameters, seed) and not on the number of
worker threads or the order in which trials finish.
"""

from __future__ import annotations

import datetime
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

from ..core.types import PointConfig
from ..highd.sampling import derive_seed, substream
from ..planar.identities import check_minkowski_identity_2d, check_symmetral_2d
from ..records import InstanceSpec, SuiteRecord, SuiteReport
from ..sphere import SphericalConfig
from . import checks
from .generators import gen_config, gen_hemisphere_free, gen_simplex_centered, regular_simplex

DEFAULT_EPSILONS = (0.3, 0.8, math.pi / 2)

BASE_PARAMS: dict[str, Any] = {
    "dim": 2,
    "n": 12,
    "trials": 100,
    "samples": 100_000,
    "r0": 1.0,
    "r": None,
    "ratio_min": 1.1,
    "ratio_max": 5.0,
    "tol": None,
}


@dataclass(frozen=True)
class Suite:
    name: str
    trial: Callable[[dict, int, int], list[SuiteRecord]]
    defaults: dict
    doc: str


def instance_spec(params: dict, seed: int, trial: int, kind: str = "generic", min_n: int = 2) -> InstanceSpec:
    """Random (N, r) for one trial: ``N`` uniform in ``[min_n, n]``, ``r / r0`` uniform in the ratio range."""
    rng = substream(seed, trial, 0x1A)
    n = int(rng.integers(min_n, max(params["n"], min_n) + 1))
    r0 = params["r0"]
    r = params["r"] if params["r"] is not None else r0 * float(rng.uniform(params["ratio_min"], params["ratio_max"]))
    return InstanceSpec(params["dim"], n, r0, r, derive_seed(seed, trial), kind, trial)


def _config(params: dict, seed: int, trial: int, extremal: bool = True, min_n: int = 2):
    """Trial 0 is the antipodal pair when ``extremal``; the rest are generic."""
    kind = "antipodal-pair" if extremal and trial == 0 else "generic"
    spec = instance_spec(params, seed, trial, kind, min_n)
    return gen_config(spec), spec.to_dict()


def _tol(params: dict, default: float) -> float:
    return default if params["tol"] is None else params["tol"]


def _theorem1(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [checks.check_theorem1(cfg, p["samples"], derive_seed(seed, trial, 1), inst, _tol(p, checks.EXACT_TOL))]


def _k(p) -> int:
    return p["k"] if p["k"] is not None else p["dim"] - 1


def _theorem2(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [checks.check_theorem2(cfg, _k(p), p["samples"], derive_seed(seed, trial, 1), p["directions"], inst,
                                  _tol(p, checks.EXACT_TOL))]


def _conjecture1(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [checks.check_conjecture1(cfg, _k(p), p["samples"], derive_seed(seed, trial, 1), p["directions"], inst,
                                     _tol(p, checks.EXACT_TOL))]


def _theorem3(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [checks.check_theorem3(cfg, p["samples"], derive_seed(seed, trial, 1), p["prefixes"], inst,
                                  _tol(p, checks.EXACT_TOL))]


def _corollary(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    k = p["k"] if p["k"] is not None else 1
    return [checks.check_corollary_intrinsic(cfg, k, p["samples"], derive_seed(seed, trial, 1), p["directions"],
                                             p["prefixes"], inst, _tol(p, checks.EXACT_TOL))]


def _kadets(p, seed, trial):
    rng = substream(seed, trial, 0x1A)
    n = 1 if trial == 0 else int(rng.integers(1, p["pieces"] + 1))
    r = p["r"] if p["r"] is not None else p["r0"]
    sub = derive_seed(seed, trial)
    inst = {"r": r, "n": n, "seed": sub, "trial": trial, "kind": "covering"}
    return [checks.check_kadets(r, n, sub, inst, _tol(p, 1e-6))]


JUNG_SHAPES = ((2, 1), (2, 2), (3, 1), (3, 2), (3, 3))


def _jung(p, seed, trial):
    """Trials cycle through (d, l); the first pass over the shapes uses regular simplices."""
    d, l = JUNG_SHAPES[trial % len(JUNG_SHAPES)]
    sub = derive_seed(seed, trial)
    regular = trial < len(JUNG_SHAPES)
    simplex = regular_simplex(d, l, p["r0"]) if regular else gen_simplex_centered(d, l, p["r0"], sub)
    inst = {"dim": d, "l": l, "r0": p["r0"], "seed": sub, "trial": trial, "regular": regular}
    rec = checks.check_jung_symmetral(d, l, p["r0"], sub, simplex, inst, _tol(p, checks.EXACT_TOL))
    if regular and d == l:
        rec.extra["equality_gap"] = rec.margin
    return [rec]


def _symmetral(p, seed, trial):
    spec = instance_spec(p, seed, trial, min_n=3)
    cfg = gen_config(spec)
    return [check_symmetral_2d(cfg, p["directions"], _tol(p, checks.EXACT_TOL), spec.to_dict())]


def _minkowski(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [check_minkowski_identity_2d(cfg, p["directions"], _tol(p, checks.EXACT_TOL), inst)]


def _inradius(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [checks.check_inradius_identity(cfg, inst, p["tol"])]


def _max_cr(p, seed, trial):
    cfg, inst = _config(p, seed, trial)
    return [checks.check_max_cr(cfg, p["directions"], derive_seed(seed, trial, 1), inst, _tol(p, checks.EXACT_TOL))]


def _sphere_config(p, seed, trial) -> SphericalConfig:
    """Trial 0 is an antipodal pair, the extremal set; the rest are random hemisphere-free sets."""
    sd = p["sphere_dim"]
    if trial == 0:
        e = [1.0] + [0.0] * sd
        return SphericalConfig.normalized(sd, [e, [-x for x in e]], math.pi / 2)
    rng = substream(seed, trial, 0x1A)
    m = int(rng.integers(sd + 2, max(p["n"], sd + 2) + 1))
    return gen_hemisphere_free(sd, m, derive_seed(seed, trial))


def _sphere_lemma(p, seed, trial):
    base = _sphere_config(p, seed, trial)
    out = []
    for j, eps in enumerate(p["epsilons"]):
        cfg = base.with_epsilon(eps)
        inst = dict(cfg.to_dict(), trial=trial)
        out.append(checks.check_sphere_lemma(cfg, p["samples"], derive_seed(seed, trial, 1, j), inst))
    return out


def _voronoi(p, seed, trial):
    base = _sphere_config(p, seed, trial)
    out = []
    for j, eps in enumerate(p["epsilons"]):
        cfg = base.with_epsilon(eps)
        inst = dict(cfg.to_dict(), trial=trial)
        out.extend(checks.check_voronoi_density(cfg, p["samples"], derive_seed(seed, trial, 1, j), inst))
    return out


_MC = {"samples": 100_000, "directions": checks.DEFAULT_DIRECTIONS, "k": None}
_SPHERE = {"sphere_dim": 2, "n": 8, "trials": 20, "samples": 1_000_000, "epsilons": DEFAULT_EPSILONS}

SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("theorem1", _theorem1, {}, "volume of P^r against the lens with inradius r - r0"),
        Suite("theorem2", _theorem2, dict(_MC), "V_k(P^r) against the Jung-factor lens"),
        Suite("conjecture1", _conjecture1, dict(_MC), "V_k(P^r) against the lens with inradius r - r0"),
        Suite("theorem3", _theorem3, {"prefixes": checks.DEFAULT_PREFIXES}, "spindle volume against conv_r P"),
        Suite("corollary-intrinsic", _corollary, dict(_MC, prefixes=(128, 256)),
              "lower bounds for V_k(conv_r P) through the spindle"),
        Suite("kadets", _kadets, {"pieces": 4}, "inradii of a covering of a disk by ball bodies sum to at least r"),
        Suite("jung-symmetral", _jung, {}, "half-diameter of a centered simplex against the Jung bound"),
        Suite("symmetral-2d", _symmetral, {"n": 8, "directions": 360}, "central symmetral of Q^r in the plane"),
        Suite("minkowski-identity", _minkowski, {"directions": 360}, "h_hull(u) + h_poly(-u) = r in the plane"),
        Suite("inradius", _inradius, {}, "r_in(P^r) = r - r_cr(P)"),
        Suite("max-cr", _max_cr, {"directions": 2000}, "P^r lies in B[c, sqrt(r^2 - r0^2)]"),
        Suite("sphere-lemma", _sphere_lemma, dict(_SPHERE), "measure of eps-neighborhoods of hemisphere-free sets"),
        Suite("voronoi-density", _voronoi, dict(_SPHERE), "cap share of each Voronoi cell"),
    ]
}

PLANAR_ONLY = {"kadets", "symmetral-2d", "minkowski-identity"}


def resolve_params(suite_id: str, overrides: dict | None = None) -> dict:
    """Defaults for ``suite_id`` merged with the non-None ``overrides``."""
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(sorted(SUITES))}")
    params = dict(BASE_PARAMS, **SUITES[suite_id].defaults)
    params.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if suite_id in PLANAR_ONLY and params["dim"] != 2:
        raise ValueError(f"suite {suite_id!r} is planar only")
    if params["trials"] < 1 or params["samples"] < 1:
        raise ValueError("trials and samples must be positive")
    if params["r"] is not None and params["r"] <= 0:
        raise ValueError("r must be positive")
    if not 0 < params["ratio_min"] <= params["ratio_max"]:
        raise ValueError("need 0 < ratio_min <= ratio_max")
    return params


def run_suite(suite_id: str, params: dict | None = None, seed: int = 0, workers: int = 1) -> SuiteReport:
    """Run every trial of ``suite_id`` and collect the records in trial order."""
    params = resolve_params(suite_id, params)
    suite = SUITES[suite_id]
    started = time.perf_counter()

    def one(trial: int) -> list[SuiteRecord]:
        return suite.trial(params, seed, trial)

    trials = range(params["trials"])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(one, trials))
    else:
        chunks = [one(t) for t in trials]
    records = [rec for chunk in chunks for rec in chunk]
    report = SuiteReport(suite_id, _jsonable(params), seed, records)
    stochastic = [r for r in records if r.stochastic]
    report.notes = {
        "description": suite.doc,
        "inconclusive_rate": report.inconclusive_count / len(records) if records else 0.0,
        "stochastic_records": len(stochastic),
        "escalated": sum(bool(r.extra.get("escalated")) for r in records),
    }
    report.runtime = time.perf_counter() - started
    report.wall_clock = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return report


def _jsonable(params: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


def config_from_instance(instance: dict) -> PointConfig:
    """Rebuild the configuration of a report record for replay."""
    return PointConfig.from_dict(instance["config"]) if "config" in instance else gen_config(InstanceSpec(**{
        k: instance[k] for k in ("dim", "n", "r0", "r", "seed", "kind", "trial", "l") if k in instance
    }))
