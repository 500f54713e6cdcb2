"""Acceptance suite: one test per criterion, at the stated sizes, tolerances and time limits.

Every test records a one-line verdict in ``RESULTS``; ``conftest.py`` prints
them at the end of the run, and they are also printed inline under ``-s``.
"""

from __future__ import annotations

import functools
import json
import math
import time

import numpy as np
import pytest

from rball import cli
from rball.core import (
    LensSpec,
    PointConfig,
    SpindleSpec,
    ball_profile,
    intrinsic_ball_constant,
    lens_measures,
    spindle_measures,
    steiner_eval,
    unit_ball_volume,
)
from rball.highd import SupportSolver, mc_surface_polyhedron, mc_volume_polyhedron
from rball.highd.sampling import substream
from rball.planar import area_perimeter, ball_hull_2d, circle_directions, disk_intersection, measures, support_2d
from rball.verify import checks
from rball.verify.suites import SUITES, run_suite

from .helpers import planar_config

SEED = 20240611
RESULTS: dict[int, str] = {}


def criterion(number: int, title: str, limit: float | None = None):
    """Time the test, enforce the runtime limit and record a one-line verdict."""

    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            started = time.perf_counter()
            status, detail = "FAIL", ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - started
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
                status = "PASS"
            except AssertionError as exc:
                detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
                raise
            finally:
                elapsed = time.perf_counter() - started
                line = f"criterion {number:2d} {status}  {title} ({elapsed:.1f} s) {detail}".rstrip()
                RESULTS[number] = line
                print("\n" + line)

        return inner

    return wrap


def suite(name: str, **params):
    return run_suite(name, params, seed=SEED)


def all_pass(report) -> None:
    s = report.summary()
    assert s["fail"] == 0, f"{report.suite}: {s['fail']} confirmed fails"
    assert s["inconclusive"] == 0, f"{report.suite}: {s['inconclusive']} inconclusive"


@criterion(1, "extremal planar cases", limit=1.0)
def test_criterion_01_extremal_cases():
    P = PointConfig(2, 2.0, [[-1.0, 0.0], [1.0, 0.0]])
    m = measures(disk_intersection(P))
    assert abs(m.area - 2 * (4 * math.pi / 3 - math.sqrt(3))) <= 1e-9
    assert abs(m.inradius - 1.0) <= 1e-9
    assert abs(m.circumradius - math.sqrt(3)) <= 1e-9
    hull = ball_hull_2d(P)
    hm = measures(hull)
    spindle = spindle_measures(SpindleSpec(2, 2.0, 1.0))
    assert abs(hm.inradius - (2 - math.sqrt(3))) <= 1e-9
    assert abs(hm.area - spindle.volume) <= 1e-9 and abs(hm.perimeter / 2 - spindle.values[1]) <= 1e-9
    assert sorted(map(tuple, np.round(hull.vertices, 9))) == [(-1.0, 0.0), (1.0, 0.0)]
    return "area, inradius, circumradius and spindle hull exact"


@criterion(2, "theorem 1, d=2, 1000 instances", limit=30.0)
def test_criterion_02_theorem1_planar():
    rep = suite("theorem1", dim=2, n=12, trials=1000)
    all_pass(rep)
    assert rep.min_margin >= -1e-9
    return f"min margin {rep.min_margin:.3g}"


@criterion(3, "theorem 1, d=3, 200 instances, 1e5 samples", limit=120.0)
def test_criterion_03_theorem1_space():
    rep = suite("theorem1", dim=3, n=12, trials=200, samples=100_000)
    all_pass(rep)
    return f"min margin {rep.min_margin:.3g}, escalated {rep.notes['escalated']}"


@criterion(4, "inradius identity, d=2 at 1e-9 and d=3..6 at 1e-7", limit=60.0)
def test_criterion_04_inradius_identity():
    rep = suite("inradius", dim=2, trials=1000, tol=1e-9)
    all_pass(rep)
    worst = max(r.lhs for r in rep.records)
    assert worst <= 1e-9
    for d in (3, 4, 5, 6):
        rep = suite("inradius", dim=d, trials=200, tol=1e-7)
        all_pass(rep)
        worst = max(worst, max(r.lhs for r in rep.records))
    return f"largest deviation {worst:.2g}"


@criterion(5, "circumradius of P^r within sqrt(r^2 - r0^2)", limit=30.0)
def test_criterion_05_max_circumradius():
    rep2 = suite("max-cr", dim=2, trials=1000)
    all_pass(rep2)
    assert all(r.lhs <= r.rhs + 1e-9 for r in rep2.records)
    rep3 = suite("max-cr", dim=3, trials=100)
    all_pass(rep3)
    return f"min margins d=2 {rep2.min_margin:.3g}, d=3 {rep3.min_margin:.3g}"


@criterion(6, "theorem 2, d=2 k=1 exact and d=3 k=2 Monte Carlo", limit=120.0)
def test_criterion_06_theorem2():
    rep2 = suite("theorem2", dim=2, k=1, trials=1000)
    all_pass(rep2)
    assert rep2.min_margin >= -1e-9
    rep3 = suite("theorem2", dim=3, k=2, trials=100, samples=100_000)
    all_pass(rep3)
    return f"min margin d=2 {rep2.min_margin:.3g}; d=3 fails 0"


@criterion(7, "theorem 3, d=2 exact and d=3 outer approximation", limit=180.0)
def test_criterion_07_theorem3():
    rep2 = suite("theorem3", dim=2, trials=1000)
    all_pass(rep2)
    assert rep2.min_margin >= -1e-9
    rep3 = suite("theorem3", dim=3, trials=50, samples=100_000)
    assert rep3.fail_count == 0
    rate = rep3.notes["inconclusive_rate"]
    return f"min margin d=2 {rep2.min_margin:.3g}; d=3 fails 0, inconclusive rate {rate:.2f}"


@criterion(8, "intrinsic-volume corollary, d=2 k=1, and its constant", limit=30.0)
def test_criterion_08_corollary():
    rep = suite("corollary-intrinsic", dim=2, k=1, trials=1000)
    all_pass(rep)
    assert rep.min_margin >= -1e-9
    worst = max(checks.corollary_constant_check(d, k) for d in range(2, 9) for k in range(1, d))
    assert worst <= 1e-12
    return f"min margin {rep.min_margin:.3g}, constant gap {worst:.2g}"


@criterion(9, "covering inradii sum, 100 coverings", limit=60.0)
def test_criterion_09_kadets():
    rep = suite("kadets", trials=100, tol=1e-6)
    all_pass(rep)
    first = rep.records[0]
    assert first.instance["n"] == 1 and abs(first.margin) <= 1e-6
    return f"min margin {rep.min_margin:.3g}; n=1 gap {abs(first.margin):.2g}"


@pytest.mark.xfail(strict=True, reason="the symmetral of Q^r is strictly smaller than the midpoint body for "
                                        "generic Q; only the inclusion holds (see the decisions ledger)")
@criterion(10, "central symmetral identity, 500 sets, 360 directions", limit=30.0)
def test_criterion_10_symmetral():
    rep = suite("symmetral-2d", trials=500, n=8)
    worst = max(r.lhs for r in rep.records)
    assert all(r.extra["inclusion_holds"] for r in rep.records)
    assert worst <= 1e-9, f"support deviation up to {worst:.3g} on {rep.fail_count}/500 sets"


@criterion(11, "hull/polyhedron support and perimeter identity", limit=30.0)
def test_criterion_11_minkowski_identity():
    rep = suite("minkowski-identity", trials=500)
    all_pass(rep)
    support = max(r.extra["support_deviation"] for r in rep.records)
    perimeter = max(r.extra["perimeter_deviation"] for r in rep.records)
    assert support <= 1e-9 and perimeter <= 1e-9
    return f"support deviation {support:.2g}, perimeter deviation {perimeter:.2g}"


@criterion(12, "Jung bound for centered simplices", limit=30.0)
def test_criterion_12_jung():
    rep = suite("jung-symmetral", trials=1000)
    all_pass(rep)
    shapes = {(r.instance["dim"], r.instance["l"]) for r in rep.records}
    assert {d for d, _ in shapes} == {2, 3} and {l for _, l in shapes} == {1, 2, 3}
    regular = [r for r in rep.records if r.instance["regular"]]
    assert regular and all(abs(r.margin) <= 1e-6 for r in regular)
    return f"min margin {rep.min_margin:.3g}, regular gap {max(abs(r.margin) for r in regular):.2g}"


@criterion(13, "sphere neighborhood lemma and Voronoi density", limit=120.0)
def test_criterion_13_sphere():
    lemma = suite("sphere-lemma", trials=20, samples=1_000_000)
    all_pass(lemma)
    assert all(r.margin >= -r.tolerance for r in lemma.records)
    voronoi = suite("voronoi-density", trials=20, samples=1_000_000)
    all_pass(voronoi)
    # each record's tolerance is 3 standard errors of its estimate
    assert all(r.margin >= -r.tolerance for r in voronoi.records)
    return f"{len(lemma.records)} lemma records, {len(voronoi.records)} Voronoi sites"


def _spindle_mc(spec: SpindleSpec, samples: int, seed: int) -> tuple[float, float]:
    """Hit-or-miss volume of a spindle from its profile, in the bounding box of the body."""
    r, lam, d = spec.r, spec.lam, spec.dim
    gap, rad = spec.half_gap, spec.inradius
    rng = substream(seed, 7)
    hits, done = 0, 0
    while done < samples:
        n = min(1 << 16, samples - done)
        t = rng.uniform(-lam, lam, n)
        y = rng.uniform(-rad, rad, (n, d - 1))
        hits += int(np.count_nonzero(np.linalg.norm(y, axis=1) <= np.sqrt(r * r - t * t) - gap))
        done += n
    box = 2 * lam * (2 * rad) ** (d - 1)
    p = hits / samples
    return box * p, box * math.sqrt(p * (1 - p) / samples)


@criterion(14, "oracle agreement: quadrature vs Monte Carlo, planar vs general", limit=120.0)
def test_criterion_14_oracles():
    samples = 1_000_000
    worst = 0.0
    for d in (2, 3, 4):
        exact = lens_measures(LensSpec(d, 2.0, 1.0)).volume
        est = mc_volume_polyhedron(PointConfig(d, 2.0, np.vstack([-np.eye(d)[0], np.eye(d)[0]])), samples, SEED + d)
        z = abs(est.value - exact) / est.stderr
        assert z <= 3, f"lens d={d}: {z:.2f} stderr"
        worst = max(worst, z)
        spec = SpindleSpec(d, 2.0, 1.0)
        value, se = _spindle_mc(spec, samples, SEED + d)
        z = abs(value - spindle_measures(spec).volume) / se
        assert z <= 3, f"spindle d={d}: {z:.2f} stderr"
        worst = max(worst, z)
    U = circle_directions(360)
    for i in range(5):
        cfg = planar_config(3 + 2 * i, 1.2 + 0.8 * i, SEED + i)
        ap = disk_intersection(cfg)
        area, perimeter = area_perimeter(ap)
        gap = np.max(np.abs(SupportSolver(cfg).support(U)[0] - support_2d(ap, U)[0]))
        assert gap <= 1e-6, f"support gap {gap:.2g}"
        vol = mc_volume_polyhedron(cfg, samples, SEED + 10 + i)
        half = mc_surface_polyhedron(cfg, samples, SEED + 20 + i)[1]
        for est, exact, what in ((vol, area, "area"), (half, perimeter / 2, "V1")):
            z = abs(est.value - exact) / est.stderr
            assert z <= 3, f"planar {what} config {i}: {z:.2f} stderr"
            worst = max(worst, z)
    return f"largest deviation {worst:.2f} stderr"


@criterion(15, "Steiner polynomial of balls, d <= 8", limit=1.0)
def test_criterion_15_steiner():
    worst = 0.0
    for d in range(1, 9):
        assert intrinsic_ball_constant(d, d) == pytest.approx(unit_ball_volume(d), rel=1e-15)
        for R in (0.5, 1.0, 2.5):
            for eps in (0.1, 1.0, 3.0):
                exact = unit_ball_volume(d) * (R + eps) ** d
                rel = abs(steiner_eval(ball_profile(d, R), eps) - exact) / exact
                assert rel <= 1e-12, f"d={d} R={R} eps={eps}: {rel:.2g}"
                worst = max(worst, rel)
    return f"largest relative error {worst:.2g}"


DETERMINISM_PARAMS = {
    "theorem1": {"trials": 12, "dim": 3, "samples": 20_000},
    "theorem2": {"trials": 6, "dim": 3, "samples": 20_000, "directions": 200},
    "conjecture1": {"trials": 6, "dim": 3, "k": 1, "directions": 200},
    "theorem3": {"trials": 4, "dim": 3, "samples": 10_000, "prefixes": [32, 64]},
    "corollary-intrinsic": {"trials": 12},
    "kadets": {"trials": 12},
    "jung-symmetral": {"trials": 12},
    "symmetral-2d": {"trials": 12},
    "minkowski-identity": {"trials": 12},
    "inradius": {"trials": 12, "dim": 4},
    "max-cr": {"trials": 12, "dim": 3, "directions": 200},
    "sphere-lemma": {"trials": 4, "samples": 20_000},
    "voronoi-density": {"trials": 4, "samples": 20_000},
}


@criterion(16, "byte-identical reports for any worker count")
def test_criterion_16_determinism(tmp_path):
    assert set(DETERMINISM_PARAMS) == set(SUITES)
    for name, params in DETERMINISM_PARAMS.items():
        texts = {run_suite(name, params, seed=SEED, workers=w).to_json(timing=False) for w in (1, 1, 2, 4)}
        assert len(texts) == 1, f"{name} differs across runs"
    # the same through the command line, with the timing block removed
    outputs = set()
    for workers in (1, 3):
        path = tmp_path / f"report-{workers}.json"
        cli.main(["verify", "theorem1", "--dim", "3", "--trials", "8", "--samples", "20000", "--seed", str(SEED),
                  "--workers", str(workers), "--report", str(path)])
        data = json.loads(path.read_text())
        del data["timing"]
        outputs.add(json.dumps(data, sort_keys=True))
    assert len(outputs) == 1
    return f"{len(SUITES)} suites and the CLI report identical at 1, 2, 3 and 4 workers"
