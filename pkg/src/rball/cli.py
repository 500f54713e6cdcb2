"""Command-line front end: ``rball compute | shapes | verify | explore``.

Exit codes: 0 success, 1 confirmed violation, 2 input error, 3 too many
inconclusive verdicts.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .core.constants import ball_profile
from .core.measures import lens_measures, spindle_measures
from .core.meb import minimal_enclosing_ball
from .core.types import EXACT, MONTE_CARLO, LensSpec, PointConfig, SpindleSpec
from .highd.hull import hull_outer_approx
from .highd.montecarlo import mc_surface_polyhedron, mc_volume_polyhedron, mean_width_polyhedron
from .highd.polyhedron import EmptyBodyError, inradius_dual
from .highd.sampling import derive_seed, fresh_seed
from .planar.arcpoly import EMPTY, FULL_DISK, PROPER, SINGLE_POINT, disk_intersection
from .planar.measures import measures
from .planar.ops import ball_hull_2d
from .records import FAIL, dumps, write_atomic
from .verify.explore import explore_conjectures
from .verify.suites import SUITES, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
COMPUTE_SCHEMA = "rball.compute/1"
SHAPES_SCHEMA = "rball.shapes/1"
WHOLE_SPACE = "whole-space"
SINGLE_TOL = 1e-9


class InputError(ValueError):
    """Malformed or out-of-range user input; maps to exit code 2."""


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def load_input(path: str) -> tuple[dict, int | None]:
    """Read a PointConfig document, or a compute report whose ``input`` is one.

    Returns the raw config mapping and the seed stored alongside it, if any.
    """
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    seed = data.get("seed") if data.get("schema") == COMPUTE_SCHEMA else None
    if "input" in data and isinstance(data["input"], dict):
        data = data["input"]
    for key in ("dim", "points"):
        if key not in data:
            raise InputError(f"input is missing {key!r}")
    if "r" not in data and "radius" not in data:
        raise InputError("input is missing 'r'")
    return data, seed


def parse_config(data: dict, r_override: float | None = None) -> PointConfig | str:
    """PointConfig from a mapping; the literal ``"whole-space"`` stands for K = E^d."""
    r = r_override if r_override is not None else data.get("r", data.get("radius"))
    try:
        dim, r = int(data["dim"]), float(r)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad dim or r: {exc}") from exc
    if dim < 1:
        raise InputError("dim must be positive")
    if not (r > 0 and math.isfinite(r)):
        raise InputError("r must be positive and finite")
    if data["points"] == WHOLE_SPACE:
        return WHOLE_SPACE
    try:
        return PointConfig(dim, r, data["points"])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _profile_dict(values: dict[int, float], provenance: dict[int, str], estimates: dict | None = None) -> dict:
    out = {
        "values": {str(k): values[k] for k in sorted(values)},
        "provenance": {str(k): provenance[k] for k in sorted(values)},
    }
    if estimates:
        out["estimates"] = {str(k): e.to_dict() for k, e in sorted(estimates.items())}
    return out


def _planar_body(ap) -> dict:
    body = {"body": ap.to_dict()}
    if ap.kind in (PROPER, FULL_DISK):
        m = measures(ap)
        body["measures"] = m.to_dict()
        body["measures"]["provenance"] = {
            "area": EXACT,
            "perimeter": EXACT,
            "inradius": EXACT,
            "circumradius": "optimization",
            "inradius_direct": "optimization",
        }
    elif ap.kind == SINGLE_POINT:
        body["measures"] = {"area": 0.0, "perimeter": 0.0, "V1": 0.0, "V2": 0.0, "inradius": 0.0,
                            "circumradius": 0.0, "provenance": {"area": EXACT, "perimeter": EXACT}}
    return body


def _highd_polyhedron(config: PointConfig, samples: int, directions: int, seed: int) -> dict:
    d, r = config.dim, config.radius
    try:
        ball = minimal_enclosing_ball(config.points, d)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if ball.radius > r * (1.0 + SINGLE_TOL):
        return {"body": {"kind": EMPTY, "r": r}}
    if len(config.effective_points()) == 1:
        prof = ball_profile(d, r)
        return {"body": {"kind": "full-ball", "r": r, "center": config.points[0].tolist()},
                "measures": dict(_profile_dict(prof.values, prof.provenance), inradius=r, circumradius=r)}
    if ball.radius >= r * (1.0 - SINGLE_TOL):
        return {"body": {"kind": SINGLE_POINT, "r": r, "point": ball.center.tolist()},
                "measures": {"values": {str(k): 0.0 for k in range(1, d + 1)}, "inradius": 0.0, "circumradius": 0.0}}
    vol = mc_volume_polyhedron(config, samples, derive_seed(seed, 1))
    surf, half = mc_surface_polyhedron(config, samples, derive_seed(seed, 2))
    width = mean_width_polyhedron(config, directions, derive_seed(seed, 3))
    values = {d: vol.value, d - 1: half.value, 1: width.value} if d > 2 else {2: vol.value, 1: half.value}
    ests = {d: vol, d - 1: half, 1: width} if d > 2 else {2: vol, 1: half}
    _, direct, gap = inradius_dual(config)
    return {
        "body": {"kind": PROPER, "r": r, "circumcenter": ball.center.tolist()},
        "measures": dict(
            _profile_dict(values, {k: MONTE_CARLO for k in values}, ests),
            surface=surf.to_dict(),
            inradius=r - ball.radius,
            inradius_direct=direct,
            inradius_gap=gap,
            circumradius_bound=math.sqrt(max(r * r - ball.radius**2, 0.0)),
        ),
    }


def _highd_hull(config: PointConfig, samples: int, centers: int, seed: int) -> dict:
    d, r = config.dim, config.radius
    ball = minimal_enclosing_ball(config.points, d)
    if ball.radius > r * (1.0 + SINGLE_TOL):
        return {"body": {"kind": EMPTY, "r": r}}
    if len(config.effective_points()) == 1:
        return {"body": {"kind": SINGLE_POINT, "r": r, "point": config.points[0].tolist()},
                "measures": {"values": {str(k): 0.0 for k in range(1, d + 1)}}}
    if len(config.effective_points()) == 2:
        pts = config.effective_points()
        lam = float(np.linalg.norm(pts[0] - pts[1])) / 2.0
        prof = spindle_measures(SpindleSpec(d, r, lam))
        return {"body": {"kind": "spindle", "r": r, "points": pts.tolist(), "circumradius": lam},
                "measures": _profile_dict(prof.values, prof.provenance)}
    try:
        approx = hull_outer_approx(config, centers, derive_seed(seed, 4))
    except EmptyBodyError:
        return {"body": {"kind": EMPTY, "r": r}}
    vol = approx.volume(samples, derive_seed(seed, 5))
    return {
        "body": {"kind": "outer-approximation", "r": r, "centers": approx.m, "circumcenter": ball.center.tolist()},
        "measures": dict(
            _profile_dict({d: vol.value}, {d: "monte-carlo-outer-bound"}, {d: vol}),
            circumradius=ball.radius,
        ),
    }


def cmd_compute(args) -> int:
    data, stored_seed = load_input(args.input)
    config = parse_config(data, args.r)
    seed = args.seed if args.seed is not None else (stored_seed if stored_seed is not None else fresh_seed())
    started = time.perf_counter()
    if config == WHOLE_SPACE:
        # (E^d)^r is empty; the hull of E^d is E^d by convention
        body = {"body": {"kind": EMPTY if args.target == "polyhedron" else WHOLE_SPACE}}
        echoed = {"dim": int(data["dim"]), "r": float(args.r or data.get("r", data.get("radius"))), "points": WHOLE_SPACE}
    else:
        echoed = config.to_dict()
        if config.dim == 2:
            ap = disk_intersection(config) if args.target == "polyhedron" else ball_hull_2d(config)
            body = _planar_body(ap)
        elif args.target == "polyhedron":
            body = _highd_polyhedron(config, args.samples, args.directions, seed)
        else:
            body = _highd_hull(config, args.samples, args.centers, seed)
    out = {
        "schema": COMPUTE_SCHEMA,
        "tool_version": __version__,
        "target": args.target,
        "seed": seed,
        "parameters": {"samples": args.samples, "directions": args.directions, "centers": args.centers},
        "input": echoed,
        **body,
        "timing": {"runtime_s": time.perf_counter() - started, "wall_clock": _now()},
    }
    _emit(out, args.report)
    return EXIT_OK


def cmd_shapes(args) -> int:
    try:
        if args.shape == "lens":
            if args.rho is None:
                raise InputError("lens needs --rho")
            prof = lens_measures(LensSpec(args.dim, args.r, args.rho))
            params = {"dim": args.dim, "r": args.r, "rho": args.rho}
        else:
            if args.lam is None:
                raise InputError("spindle needs --lambda")
            prof = spindle_measures(SpindleSpec(args.dim, args.r, args.lam))
            params = {"dim": args.dim, "r": args.r, "lambda": args.lam}
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = {
        "schema": SHAPES_SCHEMA,
        "tool_version": __version__,
        "shape": args.shape,
        "parameters": params,
        "profile": prof.to_dict(),
        "timing": {"wall_clock": _now()},
    }
    _emit(out, args.report)
    return EXIT_OK


VERIFY_FLAGS = ("dim", "n", "trials", "samples", "r", "k", "tol", "sphere_dim")


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else fresh_seed()
    overrides = {key: getattr(args, key) for key in VERIFY_FLAGS}
    try:
        report = run_suite(args.suite, overrides, seed, args.workers)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc).strip("'\"")) from exc
    _emit(report.to_dict(), args.report, args.csv and report.to_csv(), args.csv)
    _summary(report)
    if report.fail_count:
        return EXIT_VIOLATION
    if report.inconclusive_count > args.inconclusive_budget:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


CONJECTURES = {"1": 1, "2": 2, "conjecture1": 1, "conjecture2": 2}


def cmd_explore(args) -> int:
    seed = args.seed if args.seed is not None else fresh_seed()
    dim = args.dim if args.dim is not None else 2
    k = args.k if args.k is not None else 1
    kwargs = {"n": args.n if args.n is not None else 6}
    if args.r is not None:
        kwargs["r"] = args.r
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.tol is not None:
        kwargs["tol"] = args.tol
    try:
        report = explore_conjectures(CONJECTURES[args.conjecture], dim, k, args.iterations, seed, **kwargs)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    confirmed = [r for r in report.records if r.verdict == FAIL]
    if confirmed:
        report.notes["replay_bundle"] = [
            {"config": r.instance["config"], "seed": seed, "record": r.to_dict()} for r in confirmed
        ]
    _emit(report.to_dict(), args.report, args.csv and report.to_csv(), args.csv)
    _summary(report)
    return EXIT_VIOLATION if confirmed else EXIT_OK


def _emit(obj: dict, report: str | None, csv_text: str | None = None, csv_path: str | None = None) -> None:
    text = dumps(obj) + "\n"
    if report:
        write_atomic(report, text)
    else:
        sys.stdout.write(text)
    if csv_path and csv_text is not None:
        write_atomic(csv_path, csv_text)


def _summary(report) -> None:
    s = report.summary()
    print(f"{report.suite}: seed={report.seed} trials={s['trials']} pass={s['pass']} fail={s['fail']} "
          f"inconclusive={s['inconclusive']} min_margin={s['min_margin']:.6g}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rball", description="Ball polyhedra, hulls, and their inequalities.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--report", help="write the JSON here instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, help="root seed; drawn from entropy and echoed when omitted")

    p = sub.add_parser("compute", help="P^r or conv_r P with measures")
    p.add_argument("target", choices=["polyhedron", "hull"])
    p.add_argument("--input", required=True, help="JSON file {dim, r, points}")
    p.add_argument("--r", type=float, help="override the radius in the input")
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--directions", type=int, default=2000)
    p.add_argument("--centers", type=int, default=512)
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("shapes", help="intrinsic volumes of a lens or spindle")
    p.add_argument("shape", choices=["lens", "spindle"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--rho", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    common(p, seed=False)
    p.set_defaults(func=cmd_shapes)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    for flag, kind in (("--dim", int), ("--n", int), ("--trials", int), ("--samples", int), ("--r", float),
                       ("--k", int), ("--tol", float), ("--sphere-dim", int)):
        p.add_argument(flag, type=kind)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--inconclusive-budget", type=int, default=0)
    p.add_argument("--csv", help="also write a flat CSV of the records")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="search for counterexamples to a conjecture")
    p.add_argument("conjecture", help="1, 2, conjecture1 or conjecture2")
    p.add_argument("--dim", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=float)
    p.add_argument("--iterations", type=int, default=200)
    p.add_argument("--samples", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--csv")
    common(p)
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    if args.command == "explore" and args.conjecture not in CONJECTURES:
        print(f"rball: unknown conjecture {args.conjecture!r}", file=sys.stderr)
        return EXIT_INPUT
    if args.command in ("verify", "explore") and args.seed is None:
        args.seed = fresh_seed()
        print(f"rball: seed {args.seed}", file=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"rball: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
