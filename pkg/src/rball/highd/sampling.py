"""Estimates, seeded substreams and direction sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

CHUNK = 1 << 15


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo value with its standard error.

    ``band_stderr`` is the error used for verdict bands.  For hit-or-miss
    estimators it is the binomial error at the Laplace-smoothed rate
    ``(hits + 1) / (n + 2)``, which stays positive when every sample hits or
    every sample misses.  It is not serialized.
    """

    value: float
    stderr: float
    samples: int
    seed: int
    method: str
    band_stderr: float | None = None

    @property
    def noise(self) -> float:
        return self.stderr if self.band_stderr is None else self.band_stderr

    def scaled(self, factor: float) -> Estimate:
        band = None if self.band_stderr is None else abs(factor) * self.band_stderr
        return replace(self, value=factor * self.value, stderr=abs(factor) * self.stderr, band_stderr=band)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
            "method": self.method,
        }


def hit_estimate(hits: int, n: int, scale: float, seed: int, method: str) -> Estimate:
    """Estimate ``scale * P(hit)`` from ``hits`` out of ``n`` trials."""
    p = hits / n
    smooth = (hits + 1.0) / (n + 2.0)
    return Estimate(
        value=scale * p,
        stderr=scale * math.sqrt(p * (1.0 - p) / n),
        samples=n,
        seed=seed,
        method=method,
        band_stderr=scale * math.sqrt(smooth * (1.0 - smooth) / n),
    )


def substream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for the substream ``keys`` of ``seed``.

    Substreams depend only on (seed, keys), never on scheduling, so parallel
    and serial runs draw identical numbers.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys)))


def derive_seed(seed: int, *keys: int) -> int:
    """64-bit integer seed for the substream ``keys`` of ``seed``."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, np.uint64)[0])


def fresh_seed() -> int:
    return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])


def uniform_sphere(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    g = rng.standard_normal((n, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero Gaussian vector has probability zero; guard anyway
    norms[norms == 0] = 1.0
    return g / norms


def uniform_ball(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    dirs = uniform_sphere(rng, n, d)
    radii = rng.random(n) ** (1.0 / d)
    return dirs * radii[:, None]


def random_rotation(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix."""
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def _radical_inverse(indices: np.ndarray, base: int) -> np.ndarray:
    out = np.zeros(len(indices))
    f = 1.0 / base
    k = indices.copy()
    while np.any(k > 0):
        out += f * (k % base)
        k //= base
        f /= base
    return out


def sphere_directions(d: int, m: int, seed: int, nested: bool = False) -> np.ndarray:
    """``m`` well-spread unit vectors in E^d.

    d = 2 uses the van der Corput sequence of angles and d = 3 a Fibonacci
    spiral, or, when ``nested`` is set, the Halton (2, 3) sequence under the
    equal-area map; each is turned by a seeded random rotation.  With
    ``nested`` every prefix is itself well spread.  d >= 4 uses seeded
    normalized Gaussians, which are nested automatically.
    """
    if m < 1:
        raise ValueError("need at least one direction")
    rng = substream(seed, 0xD1)
    if d == 1:
        return np.where(np.arange(m) % 2 == 0, 1.0, -1.0).reshape(-1, 1)
    if d == 2:
        theta = 2.0 * math.pi * (_radical_inverse(np.arange(m), 2) + rng.random())
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if d == 3:
        if nested:
            idx = np.arange(1, m + 1)
            a, b = _radical_inverse(idx, 2), _radical_inverse(idx, 3)
        else:
            a = (np.arange(m) + 0.5) / m
            b = np.arange(m) * ((math.sqrt(5.0) - 1.0) / 2.0) % 1.0
        z = 1.0 - 2.0 * a
        rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        phi = 2.0 * math.pi * b
        pts = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
        return pts @ random_rotation(rng, 3).T
    return uniform_sphere(rng, m, d)
