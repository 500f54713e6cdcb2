"""Closed-form and quadrature measures of caps, lenses and spindles.

Quadrature uses QUADPACK's adaptive Gauss-Kronrod rule (``scipy.integrate.quad``)
on integrands rewritten in angular variables so that no endpoint carries a
square-root singularity.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .constants import intrinsic_ball_constant, unit_ball_volume
from .types import DEFAULT_TOL, EXACT, QUADRATURE, IntrinsicProfile, LensSpec, SpindleSpec


def _quad(f, a: float, b: float, rtol: float, points=None) -> float:
    if b <= a:
        return 0.0
    val, _err = integrate.quad(f, a, b, epsabs=0.0, epsrel=rtol, limit=200, points=points)
    return float(val)


def sin_power_integral(n: int, theta: float, rtol: float = DEFAULT_TOL.quad_rtol) -> float:
    """``int_0^theta sin(t)^n dt`` for integer n >= 0."""
    if n == 0:
        return theta
    if n == 1:
        return 1.0 - math.cos(theta)
    return _quad(lambda t: math.sin(t) ** n, 0.0, theta, rtol)


def cap_volume(d: int, R: float, h: float, rtol: float = DEFAULT_TOL.quad_rtol) -> float:
    """Volume of the cap of height ``h`` cut from the d-ball of radius ``R``.

    ``omega_(d-1) * int_(R-h)^R (R^2 - t^2)^((d-1)/2) dt``, computed with the
    substitution ``t = R cos v``.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    tol = 1e-12 * R
    if not -tol <= h <= 2 * R + tol:
        raise ValueError(f"cap height must lie in [0, 2R], got {h}")
    h = min(max(h, 0.0), 2 * R)
    if h == 2 * R:
        return unit_ball_volume(d) * R**d
    if d == 1:
        return h
    v_h = math.acos(max(-1.0, min(1.0, (R - h) / R)))
    return unit_ball_volume(d - 1) * R**d * sin_power_integral(d, v_h, rtol)


def cap_lateral_area(d: int, R: float, theta: float, rtol: float = DEFAULT_TOL.quad_rtol) -> float:
    """Area of the cap of angular radius ``theta`` on the sphere of radius ``R`` in E^d.

    For d = 2 the "cap" is an arc of length ``2 * theta * R``.
    """
    if not -1e-15 <= theta <= math.pi + 1e-15:
        raise ValueError("theta must lie in [0, pi]")
    theta = min(max(theta, 0.0), math.pi)
    if d < 2:
        raise ValueError("cap areas need d >= 2")
    if theta == math.pi:
        return d * unit_ball_volume(d) * R ** (d - 1)
    return R ** (d - 1) * (d - 1) * unit_ball_volume(d - 1) * sin_power_integral(d - 2, theta, rtol)


def mean_width_factor(d: int) -> float:
    """Factor turning mean width into ``V_1``: ``d omega_d / (2 omega_(d-1))``."""
    return d * unit_ball_volume(d) / (2.0 * unit_ball_volume(d - 1))


def _rotational_mean_width(d: int, h, breaks: list[float], rtol: float) -> float:
    """Mean width of an origin-symmetric body of revolution with support ``h(phi)``.

    ``phi`` is the angle to the axis; directions on S^(d-1) have density
    proportional to ``sin(phi)^(d-2)``.
    """
    if d == 2:
        num = _quad(h, 0.0, math.pi / 2, rtol, points=breaks or None)
        return 2.0 * num / (math.pi / 2)
    w = lambda p: h(p) * math.sin(p) ** (d - 2)
    num = _quad(w, 0.0, math.pi / 2, rtol, points=breaks or None)
    den = sin_power_integral(d - 2, math.pi / 2, rtol)
    return 2.0 * num / den


def lens_support(spec: LensSpec, phi):
    """Support function of the lens in a direction at angle ``phi`` to its axis."""
    r, a = spec.r, spec.offset
    c = np.abs(np.cos(phi))
    s = np.sin(phi)
    rim = math.sqrt(max(r * r - a * a, 0.0))
    return np.where(c >= a / r, r - a * c, rim * np.abs(s))


def spindle_support(spec: SpindleSpec, phi):
    """Support function of the spindle in a direction at angle ``phi`` to its axis."""
    r, lam, s = spec.r, spec.lam, spec.half_gap
    c = np.abs(np.cos(phi))
    return np.where(c <= lam / r, r - s * np.abs(np.sin(phi)), lam * c)


def lens_measures(spec: LensSpec, rtol: float = DEFAULT_TOL.quad_rtol) -> IntrinsicProfile:
    """``V_1``, ``V_(d-1)`` and ``V_d`` of an r-lens."""
    d, r, rho, a = spec.dim, spec.r, spec.rho, spec.offset
    if a == 0:
        return _ball_intrinsic(d, r)
    vol = 2.0 * cap_volume(d, r, rho, rtol)
    theta = math.acos(a / r)
    surface = 2.0 * cap_lateral_area(d, r, theta, rtol) if d >= 2 else 2.0
    switch = theta
    mean_width = _rotational_mean_width(
        d, lambda p: float(lens_support(spec, p)), [switch], rtol
    ) if d >= 2 else 2.0 * rho
    values = {d: vol}
    prov = {d: QUADRATURE}
    if d >= 2:
        values[d - 1] = surface / 2.0
        prov[d - 1] = QUADRATURE
        values[1] = mean_width_factor(d) * mean_width
        prov[1] = QUADRATURE
    return IntrinsicProfile(d, values, prov, circumradius=spec.circumradius)


def spindle_measures(spec: SpindleSpec, rtol: float = DEFAULT_TOL.quad_rtol) -> IntrinsicProfile:
    """``V_1``, ``V_(d-1)`` and ``V_d`` of an r-spindle.

    Volume and surface integrate the profile ``sqrt(r^2 - t^2) - s`` over
    ``|t| <= lam`` using ``t = r sin v``.
    """
    d, r, lam, s = spec.dim, spec.r, spec.lam, spec.half_gap
    if s == 0:
        return _ball_intrinsic(d, r)
    v0 = math.asin(lam / r)
    if d == 1:
        return IntrinsicProfile(1, {1: 2 * lam}, {1: EXACT}, circumradius=lam)
    # dt = r cos v dv, profile = r cos v - s
    vol = unit_ball_volume(d - 1) * 2.0 * _quad(
        lambda v: (r * math.cos(v) - s) ** (d - 1) * r * math.cos(v), 0.0, v0, rtol
    )
    # sqrt(1 + profile'^2) dt = r dv
    surf = (d - 1) * unit_ball_volume(d - 1) * 2.0 * _quad(
        lambda v: (r * math.cos(v) - s) ** (d - 2) * r, 0.0, v0, rtol
    )
    switch = math.acos(lam / r)
    mean_width = _rotational_mean_width(
        d, lambda p: float(spindle_support(spec, p)), [switch], rtol
    )
    values = {d: vol, d - 1: surf / 2.0, 1: mean_width_factor(d) * mean_width}
    prov = {k: QUADRATURE for k in values}
    return IntrinsicProfile(d, values, prov, circumradius=lam)


def _ball_intrinsic(d: int, r: float) -> IntrinsicProfile:
    ks = sorted({1, max(d - 1, 1), d})
    values = {k: intrinsic_ball_constant(d, k) * r**k for k in ks}
    return IntrinsicProfile(d, values, {k: EXACT for k in ks}, circumradius=r)
