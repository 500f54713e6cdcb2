from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rball.highd.sampling import random_rotation, substream
from rball.sphere import (
    SphericalConfig,
    geodesic_distance,
    hemisphere_free,
    mc_neighborhood_measure,
    mc_voronoi_density,
    spherical_cap_measure,
    total_measure,
)
from rball.verify.checks import check_sphere_lemma, check_voronoi_density
from rball.verify.generators import gen_hemisphere_free

TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3.0)
OCTA = np.vstack([np.eye(3), -np.eye(3)])
PAIR = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])


def within(est, exact, k=4.0):
    return abs(est.value - exact) <= k * est.noise


class TestCaps:
    @pytest.mark.parametrize("eps", [0.1, 0.7, math.pi / 2, 2.5])
    def test_zone_formula(self, eps):
        assert spherical_cap_measure(2, eps) == pytest.approx(2 * math.pi * (1 - math.cos(eps)), rel=1e-12)

    @pytest.mark.parametrize("eps", [0.1, 1.0, math.pi])
    def test_three_sphere(self, eps):
        exact = 2 * math.pi * (eps - math.sin(eps) * math.cos(eps))
        assert spherical_cap_measure(3, eps) == pytest.approx(exact, rel=1e-10)

    def test_circle(self):
        assert spherical_cap_measure(1, 0.4) == 0.8

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 7])
    def test_half_and_full(self, d):
        assert spherical_cap_measure(d, math.pi / 2) == pytest.approx(total_measure(d) / 2, rel=1e-10)
        assert spherical_cap_measure(d, math.pi) == pytest.approx(total_measure(d), rel=1e-10)

    def test_totals(self):
        assert total_measure(1) == pytest.approx(2 * math.pi)
        assert total_measure(2) == pytest.approx(4 * math.pi)
        assert total_measure(3) == pytest.approx(2 * math.pi**2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            spherical_cap_measure(2, 4.0)


class TestConfig:
    def test_epsilon_range(self):
        with pytest.raises(ValueError):
            SphericalConfig(2, PAIR, math.pi / 2 + 1e-6)
        with pytest.raises(ValueError):
            SphericalConfig(2, PAIR, 0.0)

    def test_unit_norm_required(self):
        with pytest.raises(ValueError):
            SphericalConfig(2, 2 * PAIR, 0.5)
        assert np.allclose(SphericalConfig.normalized(2, 2 * PAIR, 0.5).points, PAIR)

    def test_round_trip(self):
        cfg = SphericalConfig(2, TETRA, 0.5)
        again = SphericalConfig.from_dict(cfg.to_dict())
        assert np.array_equal(again.points, cfg.points) and again.epsilon == cfg.epsilon


class TestHemisphere:
    def test_antipodal_pair(self):
        v = hemisphere_free(PAIR)
        assert v.free and np.allclose(v.coefficients, [0.5, 0.5])
        assert v.depth == 0.0 and v.borderline

    def test_tetrahedron(self):
        v = hemisphere_free(TETRA)
        assert v.free and not v.borderline
        assert np.allclose(v.coefficients, 0.25)
        assert v.depth == pytest.approx(1 / 3, abs=1e-12)

    def test_cluster_in_cap(self):
        rng = np.random.default_rng(1)
        X = np.array([0, 0, 1.0]) + 0.3 * rng.standard_normal((10, 3))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        v = hemisphere_free(X)
        assert not v.free
        assert np.all(X @ v.witness > 0)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(3, 12))
    def test_rotation_invariant(self, seed, m):
        rng = substream(seed, 1)
        X = rng.standard_normal((m, 3))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        Q = random_rotation(rng, 3)
        a, b = hemisphere_free(X), hemisphere_free(X @ Q.T)
        if not (a.borderline or b.borderline):
            assert a.free == b.free

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(3, 12))
    def test_certificates(self, seed, m):
        rng = substream(seed, 2)
        X = rng.standard_normal((m, 3))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        v = hemisphere_free(X)
        if v.free:
            assert np.all(v.coefficients >= -1e-12)
            assert np.allclose(v.coefficients @ X, 0.0, atol=1e-9)
        elif v.witness is not None:
            assert np.all(X @ v.witness > 0)

    def test_generator_output(self):
        cfg = gen_hemisphere_free(2, 6, 3)
        v = hemisphere_free(cfg)
        assert v.free and not v.borderline


class TestNeighborhood:
    def test_single_point(self):
        cfg = SphericalConfig(2, PAIR[:1], 0.7)
        assert within(mc_neighborhood_measure(cfg, 200_000, 1), spherical_cap_measure(2, 0.7))

    @pytest.mark.parametrize("eps", [0.3, 1.0, math.pi / 2])
    def test_antipodal_pair(self, eps):
        cfg = SphericalConfig(2, PAIR, eps)
        assert within(mc_neighborhood_measure(cfg, 200_000, 1), 2 * spherical_cap_measure(2, eps))

    def test_tetrahedron_disjoint_caps(self):
        # caps of radius 0.5 around tetrahedron vertices do not overlap
        cfg = SphericalConfig(2, TETRA, 0.5)
        assert within(mc_neighborhood_measure(cfg, 200_000, 1), 4 * spherical_cap_measure(2, 0.5))

    def test_monotone_in_epsilon(self):
        cfg = gen_hemisphere_free(2, 7, 5)
        vals = [mc_neighborhood_measure(cfg.with_epsilon(e), 50_000, 2).value for e in (0.2, 0.5, 0.9, 1.3)]
        assert vals == sorted(vals)

    def test_rotation_invariant(self):
        cfg = gen_hemisphere_free(2, 7, 5).with_epsilon(0.6)
        Q = random_rotation(np.random.default_rng(0), 3)
        a = mc_neighborhood_measure(cfg, 200_000, 1)
        b = mc_neighborhood_measure(SphericalConfig.normalized(2, cfg.points @ Q.T, 0.6), 200_000, 2)
        assert abs(a.value - b.value) <= 4 * math.hypot(a.noise, b.noise)

    def test_geodesic_distance(self):
        assert geodesic_distance(PAIR[0], PAIR[1]) == pytest.approx(math.pi)
        assert geodesic_distance(TETRA[0], TETRA[1]) == pytest.approx(math.acos(-1 / 3))

    @pytest.mark.parametrize("seed", range(3))
    def test_lemma_holds(self, seed):
        cfg = gen_hemisphere_free(2, 6, seed).with_epsilon(0.8)
        assert check_sphere_lemma(cfg, 100_000, seed).verdict == "pass"


class TestVoronoi:
    def test_antipodal_pair_is_tight(self):
        sites = mc_voronoi_density(SphericalConfig(2, PAIR, 0.8), 200_000, 1)
        for s in sites:
            assert abs(s.margin) <= 4 * s.ratio_stderr

    def test_tetrahedron(self):
        # each cap lies inside its cell, which is a quarter of the sphere
        sites = mc_voronoi_density(SphericalConfig(2, TETRA, 0.5), 400_000, 1)
        exact = 4 * spherical_cap_measure(2, 0.5) / total_measure(2)
        for s in sites:
            assert abs(s.ratio - exact) <= 4 * s.ratio_stderr
            assert s.bound == pytest.approx(exact / 2)

    def test_octahedron(self):
        sites = mc_voronoi_density(SphericalConfig(2, OCTA, 0.7), 600_000, 1)
        exact = 6 * spherical_cap_measure(2, 0.7) / total_measure(2)
        for s in sites:
            assert abs(s.ratio - exact) <= 4 * s.ratio_stderr

    def test_check_passes(self):
        recs = check_voronoi_density(SphericalConfig(2, OCTA, 0.8), 200_000, 3)
        assert len(recs) == 6 and all(r.verdict == "pass" for r in recs)

    def test_requires_hemisphere_free(self):
        with pytest.raises(ValueError):
            mc_voronoi_density(SphericalConfig(2, PAIR[:1], 0.5), 1000, 0)

    def test_requires_distinct_sites(self):
        with pytest.raises(ValueError):
            mc_voronoi_density(SphericalConfig(2, np.vstack([PAIR, PAIR[:1]]), 0.5), 1000, 0)
