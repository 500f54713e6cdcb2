"""Verdict records and suite reports.

A record compares a left-hand side against a right-hand side; the margin is
``rhs - lhs`` so a proved inequality ``lhs <= rhs`` has nonnegative margin.
Identity checks record the deviation as ``lhs`` against ``rhs = 0``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__

SCHEMA = "rball.suite-report/1"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class InstanceSpec:
    dim: int
    n: int
    r0: float
    r: float
    seed: int
    kind: str = "generic"
    trial: int = 0
    l: int | None = None

    def __post_init__(self):
        if self.kind not in ("generic", "simplex-centered", "antipodal-pair", "covering"):
            raise ValueError(f"unknown instance kind {self.kind!r}")
        if not self.r0 > 0 or not self.r > 0:
            raise ValueError("r and r0 must be positive")

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        if out["l"] is None:
            del out["l"]
        return out


RESOLUTION = 0.05


def judge(margin: float, tol: float, stochastic: bool, scale: float = 0.0,
          resolution: float = RESOLUTION) -> str:
    """Verdict for a margin against its tolerance band.

    A margin inside the band passes, which is what equality cases produce.  A
    stochastic comparison whose band is wider than ``resolution * scale`` is
    undersampled and comes out inconclusive whatever its sign.
    """
    if not math.isfinite(margin) or not math.isfinite(tol):
        return INCONCLUSIVE
    if stochastic and scale > 0 and tol > resolution * scale:
        return INCONCLUSIVE
    if margin < -tol:
        return FAIL
    return PASS


@dataclass
class SuiteRecord:
    instance: dict[str, Any]
    lhs: float
    rhs: float
    tolerance: float
    stochastic: bool = False
    lhs_stderr: float = 0.0
    rhs_stderr: float = 0.0
    verdict: str = ""
    scale: float = 0.0
    witnesses: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.lhs, self.rhs, self.tolerance = float(self.lhs), float(self.rhs), float(self.tolerance)
        self.lhs_stderr, self.rhs_stderr = float(self.lhs_stderr), float(self.rhs_stderr)
        if not self.scale:
            self.scale = max(abs(self.lhs), abs(self.rhs))
        if not self.verdict:
            self.verdict = judge(self.margin, self.tolerance, self.stochastic, self.scale)

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "lhs": self.lhs,
            "lhs_stderr": self.lhs_stderr,
            "rhs": self.rhs,
            "rhs_stderr": self.rhs_stderr,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "stochastic": self.stochastic,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "extra": self.extra,
        }


@dataclass
class SuiteReport:
    suite: str
    parameters: dict[str, Any]
    seed: int
    records: list[SuiteRecord]
    runtime: float = 0.0
    wall_clock: str = ""
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def fail_count(self) -> int:
        return sum(r.verdict == FAIL for r in self.records)

    @property
    def inconclusive_count(self) -> int:
        return sum(r.verdict == INCONCLUSIVE for r in self.records)

    @property
    def min_margin(self) -> float:
        margins = [r.margin for r in self.records if math.isfinite(r.margin)]
        return min(margins) if margins else math.nan

    def summary(self) -> dict[str, Any]:
        return {
            "trials": len(self.records),
            "pass": sum(r.verdict == PASS for r in self.records),
            "fail": self.fail_count,
            "inconclusive": self.inconclusive_count,
            "min_margin": self.min_margin,
        }

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "suite": self.suite,
            "parameters": self.parameters,
            "seed": self.seed,
            "summary": self.summary(),
            "notes": self.notes,
            "records": [r.to_dict() for r in self.records],
        }
        if timing:
            out["timing"] = {"runtime_s": self.runtime, "wall_clock": self.wall_clock}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, default=_json_default)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["trial", "lhs", "rhs", "margin", "verdict"])
        for i, rec in enumerate(self.records):
            writer.writerow([i, repr(rec.lhs), repr(rec.rhs), repr(rec.margin), rec.verdict])
        return buf.getvalue()


def _json_default(obj):
    import numpy as np

    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default)


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
