"""Value types shared by every kernel.

All types are frozen dataclasses; arrays stored on them are copied and marked
read-only at construction so instances can be shared between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def _frozen_array(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ToleranceProfile:
    exact_eps: float = 1e-9
    quad_rtol: float = 1e-10
    optim_tol: float = 1e-8
    mc_sigma: float = 3.0

    def __post_init__(self):
        for name in ("exact_eps", "quad_rtol", "optim_tol", "mc_sigma"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceProfile()


@dataclass(frozen=True, eq=False)
class PointConfig:
    """A finite generator set P in E^d together with the ball radius r."""

    dim: int
    radius: float
    points: np.ndarray

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError("radius must be positive and finite")
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1 and self.dim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("points must be a non-empty list of points")
        if pts.shape[1] != self.dim:
            raise ValueError(
                f"every point needs exactly {self.dim} coordinates, got {pts.shape[1]}"
            )
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def effective_points(self, eps: float = 1e-12) -> np.ndarray:
        """Generator set with (near-)duplicates removed, order preserved."""
        keep: list[np.ndarray] = []
        for p in self.points:
            if all(np.linalg.norm(p - q) > eps for q in keep):
                keep.append(p)
        return np.array(keep)

    def with_points(self, points) -> PointConfig:
        return PointConfig(self.dim, self.radius, points)

    def to_dict(self) -> dict[str, Any]:
        return {"dim": self.dim, "r": self.radius, "points": self.points.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PointConfig:
        radius = data.get("r", data.get("radius"))
        if radius is None:
            raise ValueError("missing radius field 'r'")
        return cls(int(data["dim"]), float(radius), data["points"])


@dataclass(frozen=True, eq=False)
class BallSpec:
    center: np.ndarray
    radius: float
    support: tuple[int, ...] = ()

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        object.__setattr__(self, "center", _frozen_array(self.center, 1))
        object.__setattr__(self, "radius", float(self.radius))

    def contains(self, y, eps: float = 1e-9) -> bool:
        return float(np.linalg.norm(np.asarray(y, float) - self.center)) <= self.radius + eps


def _axis(dim: int, axis) -> np.ndarray:
    if axis is None:
        e = np.zeros(dim)
        e[0] = 1.0
        return e
    e = np.array(axis, dtype=float)
    if e.shape != (dim,):
        raise ValueError("axis must have dim coordinates")
    norm = np.linalg.norm(e)
    if norm == 0:
        raise ValueError("axis must be nonzero")
    return e / norm


@dataclass(frozen=True, eq=False)
class LensSpec:
    """Intersection of two radius-r balls whose inradius is ``rho``.

    The generating centers sit at ``±offset * axis`` with ``offset = r - rho``.
    """

    dim: int
    r: float
    rho: float
    axis: np.ndarray | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not self.r > 0:
            raise ValueError("r must be positive")
        if not 0 < self.rho <= self.r:
            raise ValueError("lens inradius must satisfy 0 < rho <= r")
        object.__setattr__(self, "axis", _frozen_array(_axis(self.dim, self.axis), 1))

    @property
    def offset(self) -> float:
        return self.r - self.rho

    @property
    def inradius(self) -> float:
        return self.rho

    @property
    def circumradius(self) -> float:
        a = self.offset
        return math.sqrt(max(self.r * self.r - a * a, 0.0))

    @property
    def centers(self) -> np.ndarray:
        return np.array([self.offset * self.axis, -self.offset * self.axis])

    def to_config(self) -> PointConfig:
        if self.offset == 0:
            return PointConfig(self.dim, self.r, [np.zeros(self.dim)])
        return PointConfig(self.dim, self.r, self.centers)


@dataclass(frozen=True, eq=False)
class SpindleSpec:
    """The r-ball hull of the two points ``±lam * axis``."""

    dim: int
    r: float
    lam: float
    axis: np.ndarray | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not self.r > 0:
            raise ValueError("r must be positive")
        if not 0 < self.lam <= self.r:
            raise ValueError("spindle circumradius must satisfy 0 < lam <= r")
        object.__setattr__(self, "axis", _frozen_array(_axis(self.dim, self.axis), 1))

    @property
    def half_gap(self) -> float:
        return math.sqrt(max(self.r * self.r - self.lam * self.lam, 0.0))

    @property
    def circumradius(self) -> float:
        return self.lam

    @property
    def inradius(self) -> float:
        return self.r - self.half_gap

    @property
    def points(self) -> np.ndarray:
        return np.array([self.lam * self.axis, -self.lam * self.axis])

    def to_config(self) -> PointConfig:
        return PointConfig(self.dim, self.r, self.points)


EXACT = "exact"
QUADRATURE = "quadrature"
MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class IntrinsicProfile:
    """Intrinsic volumes ``V_k`` keyed by ``k`` with a provenance tag per entry.

    Provenance is ``"exact"``, ``"quadrature"`` or ``"monte-carlo"``; Monte Carlo
    entries may carry their :class:`~rball.highd.Estimate` in ``estimates``.
    """

    dim: int
    values: dict[int, float]
    provenance: dict[int, str] = field(default_factory=dict)
    estimates: dict[int, Any] = field(default_factory=dict)
    circumradius: float | None = None

    def __post_init__(self):
        for k, v in self.values.items():
            if not 0 <= k <= self.dim:
                raise ValueError(f"index {k} out of range for dim {self.dim}")
            if v < 0:
                raise ValueError(f"V_{k} must be nonnegative")

    def __getitem__(self, k: int) -> float:
        return self.values[k]

    @property
    def volume(self) -> float:
        return self.values[self.dim]

    @property
    def surface(self) -> float:
        return 2.0 * self.values[self.dim - 1]

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "dim": self.dim,
            "values": {str(k): self.values[k] for k in sorted(self.values)},
            "provenance": {str(k): self.provenance.get(k, EXACT) for k in sorted(self.values)},
        }
        if self.estimates:
            out["estimates"] = {str(k): e.to_dict() for k, e in sorted(self.estimates.items())}
        if self.circumradius is not None:
            out["circumradius"] = self.circumradius
        return out
