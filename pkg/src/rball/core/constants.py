"""Unit-ball constants and the Steiner polynomial."""

from __future__ import annotations

import math

from .types import EXACT, IntrinsicProfile


def unit_ball_volume(d: int) -> float:
    """Volume of the d-dimensional unit ball, ``pi^(d/2) / Gamma(1 + d/2)``."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    # lgamma keeps large d finite; exp/log round trip costs < 1e-15 relative
    if d <= 100:
        return math.pi ** (d / 2.0) / math.gamma(1.0 + d / 2.0)
    return math.exp(0.5 * d * math.log(math.pi) - math.lgamma(1.0 + d / 2.0))


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1) in E^d, i.e. ``d * omega_d``."""
    return d * unit_ball_volume(d)


def intrinsic_ball_constant(d: int, k: int) -> float:
    """``V_k`` of the d-dimensional unit ball: ``C(d, k) * omega_d / omega_(d-k)``."""
    if not 0 <= k <= d:
        raise ValueError(f"k must lie in [0, {d}], got {k}")
    return math.comb(d, k) * unit_ball_volume(d) / unit_ball_volume(d - k)


def ball_profile(d: int, radius: float = 1.0) -> IntrinsicProfile:
    """Complete intrinsic-volume profile (k = 0..d) of a radius-R ball."""
    values = {k: intrinsic_ball_constant(d, k) * radius**k for k in range(d + 1)}
    return IntrinsicProfile(
        d, values, {k: EXACT for k in values}, circumradius=float(radius)
    )


def steiner_eval(profile: IntrinsicProfile, eps: float) -> float:
    """Volume of the parallel body ``A + eps * B^d`` from the intrinsic volumes of A.

    Evaluates ``sum_{i=1..d} omega_(d-i) V_i eps^(d-i) + omega_d eps^d``; the last
    term is the ``i = 0`` contribution with ``V_0 = 1``, so that inflating a
    single point yields the ball volume.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    d = profile.dim
    missing = [i for i in range(1, d + 1) if i not in profile.values]
    if missing:
        raise ValueError(f"profile lacks V_k for k in {missing}")
    total = unit_ball_volume(d) * eps**d
    for i in range(1, d + 1):
        total += unit_ball_volume(d - i) * profile.values[i] * eps ** (d - i)
    return total
