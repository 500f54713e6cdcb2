"""Shared instance builders for the tests."""

from __future__ import annotations

from rball.core import PointConfig
from rball.records import InstanceSpec
from rball.verify.generators import gen_config


def planar_config(n: int, ratio: float, seed: int) -> PointConfig:
    """Generic normalized configuration in the plane: circumcenter o, circumradius 1, r = ratio."""
    return gen_config(InstanceSpec(2, n, 1.0, ratio, seed))


def config(d: int, n: int, ratio: float, seed: int) -> PointConfig:
    return gen_config(InstanceSpec(d, n, 1.0, ratio, seed))
