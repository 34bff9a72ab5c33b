"""
Tests for the normal tail functions and Bernoulli divergences.
"""

import math

import numpy as np
import pytest

from cpdetect.errors import InputError
from cpdetect.numerics import (
    bern_hellinger_sq,
    bern_kl,
    std_normal_log_sf,
    std_normal_quantile_sf,
    std_normal_sf,
)

LATTICE = (np.arange(100) + 0.5) / 100.0


class TestStdNormalSf:
    """Tests for Φ̄."""

    def test_median(self):
        assert std_normal_sf(0.0) == 0.5

    def test_tail_limits(self):
        assert std_normal_sf(40.0) < 1e-300
        assert std_normal_sf(-40.0) >= 1.0 - 1e-300

    def test_known_value(self):
        assert std_normal_sf(1.0) == pytest.approx(0.158655253931457, rel=1e-12)

    def test_symmetry(self):
        x = np.linspace(-8, 8, 1601)
        assert np.allclose(std_normal_sf(x) + std_normal_sf(-x), 1.0, atol=1e-14, rtol=0)

    def test_strictly_decreasing(self):
        x = np.linspace(-5, 8, 1301)
        assert np.all(np.diff(std_normal_sf(x)) < 0)

    def test_log_sf_far_tail(self):
        """log Φ̄ stays finite where Φ̄ underflows."""
        assert math.isfinite(std_normal_log_sf(50.0))
        assert std_normal_log_sf(2.0) == pytest.approx(math.log(std_normal_sf(2.0)), rel=1e-12)

    def test_nan_rejected(self):
        with pytest.raises(InputError, match="non-finite input"):
            std_normal_sf(float("nan"))


class TestQuantile:
    """Tests for Φ̄⁻¹."""

    def test_median(self):
        assert std_normal_quantile_sf(0.5) == pytest.approx(0.0, abs=1e-15)

    def test_round_trip(self):
        assert abs(std_normal_sf(std_normal_quantile_sf(0.025)) - 0.025) <= 1e-10

    def test_round_trip_grid(self):
        q = np.concatenate([np.logspace(-12, np.log10(0.5), 200), 1.0 - np.logspace(-12, np.log10(0.5), 200)])
        back = std_normal_sf(std_normal_quantile_sf(q))
        assert np.max(np.abs(back - q)) <= 1e-10

    def test_monotone(self):
        assert std_normal_quantile_sf(0.1) > std_normal_quantile_sf(0.2)

    @pytest.mark.parametrize("q", [0.0, 1.0])
    def test_boundary(self, q):
        with pytest.raises(InputError, match="quantile at boundary"):
            std_normal_quantile_sf(q)


class TestBernKl:
    """Tests for K(x, t)."""

    def test_identical(self):
        assert bern_kl(0.3, 0.3) == pytest.approx(0.0, abs=1e-15)

    def test_known_value(self):
        assert bern_kl(0.5, 0.25) == pytest.approx(0.5 * math.log(2) + 0.5 * math.log(0.5 / 0.75), abs=1e-12)
        assert bern_kl(0.5, 0.25) == pytest.approx(0.143841036, abs=1e-9)

    def test_endpoints(self):
        assert bern_kl(0.0, 0.2) == pytest.approx(-math.log(0.8), rel=1e-14)
        assert bern_kl(1.0, 0.2) == pytest.approx(-math.log(0.2), rel=1e-14)

    def test_pinsker_example(self):
        assert bern_kl(0.6, 0.3) >= 0.18

    @pytest.mark.parametrize("t", [0.0, 1.0])
    def test_degenerate_reference(self, t):
        with pytest.raises(InputError, match="degenerate reference"):
            bern_kl(0.5, t)

    def test_lower_bound_quadratic(self):
        x, t = np.meshgrid(LATTICE, LATTICE, indexing="ij")
        assert np.all(bern_kl(x, t) >= 2.0 * (x - t) ** 2 - 1e-12)

    def test_lower_bound_chi_square(self):
        x, t = np.meshgrid(LATTICE, LATTICE, indexing="ij")
        mask = x / t <= 4.0
        kl = bern_kl(x[mask], t[mask])
        assert np.all(kl >= (x[mask] - t[mask]) ** 2 / (9.0 * t[mask]) - 1e-12)

    def test_lower_bound_large_ratio(self):
        x, t = np.meshgrid(LATTICE, np.logspace(-8, -0.5, 100), indexing="ij")
        mask = (x / t >= math.e ** 2) & (x <= 0.5)
        assert mask.sum() > 1000
        kl = bern_kl(x[mask], t[mask])
        assert np.all(kl >= 0.5 * x[mask] * np.log(x[mask] / t[mask]) - 1e-12)

    def test_hellinger_chain(self):
        x, t = np.meshgrid(LATTICE, LATTICE, indexing="ij")
        h2 = bern_hellinger_sq(x, t)
        assert np.all(bern_kl(x, t) >= h2 - 1e-12)
        assert np.all(h2 >= (np.sqrt(x) - np.sqrt(t)) ** 2 - 1e-15)
