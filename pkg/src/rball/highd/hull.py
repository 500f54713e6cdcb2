"""Outer approximation of the r-ball hull by finitely many balls.

``conv_r P`` is the intersection of ``B[c, r]`` over all ``c`` in ``P^r``.
Any finite selection of centers in ``P^r`` therefore gives a superset of the
hull, and the superset shrinks as centers are added.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.constants import unit_ball_volume
from ..core.meb import minimal_enclosing_ball
from ..core.types import PointConfig
from .montecarlo import inside_all
from .polyhedron import SupportSolver
from .sampling import CHUNK, Estimate, hit_estimate, sphere_directions, substream, uniform_ball

FEASIBILITY_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class OuterHullApprox:
    """Centers ``c_j`` in ``P^r`` whose balls ``B[c_j, r]`` all contain ``conv_r P``.

    ``witness[j]`` is ``max_i |c_j - p_i| - r``, which is at most
    ``FEASIBILITY_SLACK``.
    """

    base: PointConfig
    centers: np.ndarray
    directions: np.ndarray
    witness: np.ndarray
    seed: int

    @property
    def m(self) -> int:
        return len(self.centers)

    def induced(self, m: int | None = None) -> PointConfig:
        """The ball intersection generated by the first ``m`` centers."""
        m = self.m if m is None else m
        return PointConfig(self.base.dim, self.base.radius, self.centers[:m])

    def nested_volumes(self, ms, samples: int, seed: int) -> list[Estimate]:
        """Volumes of ``induced(m) ∩ B[c_P, r0]`` for each ``m`` in ``ms``.

        The circumball ``B[c_P, r0]`` of ``P`` is itself r-ball convex, so it
        contains ``conv_r P`` and clipping by it keeps every estimate an outer
        bound.  The smallest prefix's region lies in the ball about the
        circumcenter of its centers with radius ``sqrt(r^2 - R_C^2)``.  Samples
        are drawn in the smaller of the two balls and tested against both.
        All prefixes share one sample set, so the estimates are exactly
        nonincreasing in ``m``.
        """
        ms = sorted(int(m) for m in ms)
        if not ms or ms[0] < 1 or ms[-1] > self.m:
            raise ValueError(f"prefix sizes must lie in [1, {self.m}]")
        r, d = self.base.radius, self.base.dim
        ball = minimal_enclosing_ball(self.centers[: ms[0]], d)
        region = (ball.center, math.sqrt(max(r * r - ball.radius**2, 0.0)))
        circum = minimal_enclosing_ball(self.base.points, d)
        circum = (circum.center, circum.radius)
        (c, R), (c_other, R_other) = sorted([region, circum], key=lambda b: b[1])
        vol = unit_ball_volume(d) * R**d
        counts = np.zeros(len(ms), dtype=np.int64)
        rng = substream(seed, 0x40)
        done = 0
        while done < samples:
            n = min(CHUNK, samples - done)
            X = c + R * uniform_ball(rng, n, d)
            alive = np.einsum("ij,ij->i", X - c_other, X - c_other) <= R_other * R_other * (1.0 + 1e-12)
            lo = 0
            for k, m in enumerate(ms):
                idx = np.flatnonzero(alive)
                if len(idx):
                    alive[idx] = inside_all(X[idx], self.centers[lo:m], r)
                counts[k] += int(alive.sum())
                lo = m
            done += n
        return [hit_estimate(int(h), samples, vol, seed, "mc-outer-hull") for h in counts]

    def volume(self, samples: int, seed: int) -> Estimate:
        return self.nested_volumes([self.m], samples, seed)[0]

    def to_dict(self) -> dict:
        return {
            "config": self.base.to_dict(),
            "m": self.m,
            "seed": self.seed,
            "centers": self.centers.tolist(),
            "directions": self.directions.tolist(),
            "max_witness": float(np.max(self.witness)),
        }


def hull_outer_approx(config: PointConfig, m: int, seed: int, solver: SupportSolver | None = None) -> OuterHullApprox:
    """Centers at the support points of ``P^r`` in ``m`` spread directions.

    Directions form a nested low-discrepancy set under a seeded random
    rotation, so the first ``k`` centers are themselves well spread.
    """
    if m < 1:
        raise ValueError("need at least one center")
    solver = solver or SupportSolver(config)
    U = sphere_directions(config.dim, m, seed, nested=True)
    _, centers = solver.support(U)
    witness = np.max(np.linalg.norm(centers[:, None, :] - config.points[None], axis=2), axis=1) - config.radius
    if np.max(witness) > FEASIBILITY_SLACK * max(config.radius, 1.0):
        raise ArithmeticError(f"support point left P^r by {np.max(witness):.3e}")
    return OuterHullApprox(config, centers, U, witness, seed)
