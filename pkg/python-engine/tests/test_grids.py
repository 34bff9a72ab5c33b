"""
Tests for candidate grids and the θ^(t) geometry.
"""

import math

import numpy as np
import pytest

from cpdetect.errors import InputError
from cpdetect.grids import (
    auto_delta,
    build_lower_grid,
    build_upper_grid,
    coverage_factor,
    covering_point,
    resolve_scan_grid,
    theta_gram,
    theta_inner,
    theta_vector,
)


def _uncovered(grid, n, delta):
    """Splits t ≤ n/2 with no grid point in (t/(1+δ), t]."""
    pts = grid.as_array()
    t = np.arange(1, n // 2 + 1)
    idx = np.searchsorted(pts, t, side="right") - 1
    below = np.where(idx >= 0, pts[np.clip(idx, 0, None)], 0)
    return t[~((idx >= 0) & (below * (1.0 + delta) > t))]


class TestUpperGrid:
    """Tests for build_upper_grid."""

    def test_n16_delta1(self):
        assert build_upper_grid(16, 1.0).points == (1, 2, 4, 8, 12, 14, 15)

    def test_n4_delta1(self):
        assert build_upper_grid(4, 1.0).points == (1, 2, 3)

    def test_symmetric(self):
        grid = build_upper_grid(5000, 0.1)
        pts = set(grid.points)
        assert pts == {grid.n - g for g in pts}

    def test_strictly_increasing_in_range(self):
        grid = build_upper_grid(2000)
        pts = grid.as_array()
        assert np.all(np.diff(pts) > 0)
        assert pts[0] >= 1 and pts[-1] <= 1999

    def test_too_short(self):
        with pytest.raises(InputError, match="sequence too short"):
            build_upper_grid(3, 1.0)

    def test_auto_undefined(self):
        with pytest.raises(InputError, match="delta auto-rule undefined"):
            build_upper_grid(10)

    def test_auto_delta_cap(self):
        assert auto_delta(256) == 0.25
        assert auto_delta(100000) == pytest.approx(1.0 / math.log(math.log(100000)))

    @pytest.mark.parametrize("n", [64, 1000, 100000])
    def test_coverage_auto(self, n):
        grid = build_upper_grid(n)
        assert _uncovered(grid, n, grid.delta).size == 0

    def test_coverage_fine_delta(self):
        grid = build_upper_grid(1_000_000, 0.05)
        assert _uncovered(grid, 1_000_000, 0.05).size == 0

    def test_coverage_mirrored(self):
        n = 1000
        grid = build_upper_grid(n)
        for t in (501, 650, 900, 999):
            g = covering_point(grid, t)
            u = n - t
            assert n - g <= u < (n - g) * (1.0 + grid.delta)


class TestLowerGrid:
    """Tests for build_lower_grid."""

    def test_base10(self):
        assert build_lower_grid(1000, 10).points == (10, 100)

    def test_single_power(self):
        assert build_lower_grid(100, 99).points == (99,)

    def test_base_must_exceed_one(self):
        with pytest.raises(InputError, match="base must exceed 1"):
            build_lower_grid(1000, 1.0)

    def test_auto_size(self):
        n = 100000
        size = len(build_lower_grid(n))
        expected = math.log(n) / math.log(math.log(n))
        assert expected / 2 <= size <= 2 * expected

    def test_too_short(self):
        with pytest.raises(InputError):
            build_lower_grid(15)


class TestScanGrid:
    """Tests for the detect-time grid fallbacks."""

    def test_all_columns(self):
        grid = resolve_scan_grid(2)
        assert grid.points == (1,)
        assert grid.fallback == "all_columns"

    def test_delta_one_fallback(self):
        grid = resolve_scan_grid(8)
        assert grid.points == (1, 2, 4, 6, 7)
        assert grid.fallback == "delta_1"

    def test_auto(self):
        grid = resolve_scan_grid(2000)
        assert grid.fallback is None
        assert grid.points == build_upper_grid(2000).points


class TestTheta:
    """Tests for θ^(t) and its inner products."""

    def test_example_vector(self):
        th = theta_vector(8, 2)
        assert th.head_value == pytest.approx(math.sqrt(6 / 16), abs=1e-12)
        assert th.tail_value == pytest.approx(-math.sqrt(2 / 48), abs=1e-12)
        assert th.head_value == pytest.approx(0.612372, abs=1e-6)
        assert th.squared_norm() == pytest.approx(1.0, abs=1e-12)

    def test_symmetric_split(self):
        th = theta_vector(2, 1)
        assert th.head_value == pytest.approx(math.sqrt(0.5))
        assert -th.tail_value == pytest.approx(math.sqrt(0.5))

    def test_split_outside(self):
        with pytest.raises(InputError, match="split outside sequence"):
            theta_vector(8, 8)

    def test_inner_example(self):
        value = theta_inner(8, 2, 4)
        assert value == pytest.approx(math.sqrt(2 / 4) * math.sqrt(4 / 6), abs=1e-12)
        assert value == pytest.approx(0.577350, abs=1e-6)
        brute = theta_vector(8, 2).materialize() @ theta_vector(8, 4).materialize()
        assert value == pytest.approx(brute, abs=1e-12)

    def test_inner_self(self):
        assert theta_inner(100, 37, 37) == pytest.approx(1.0, abs=1e-15)

    def test_inner_random_pairs(self, rng):
        n = 2048
        for t1, t2 in rng.integers(1, n, size=(1000, 2)):
            brute = theta_vector(n, int(t1)).materialize() @ theta_vector(n, int(t2)).materialize()
            assert abs(theta_inner(n, int(t1), int(t2)) - brute) <= 1e-12

    def test_lower_grid_decay(self):
        base = 10.0
        grid = build_lower_grid(1_000_000, base)
        pts = grid.points
        for k, tk in enumerate(pts, start=1):
            for l, tl in enumerate(pts, start=1):
                assert theta_inner(grid.n, tk, tl) <= base ** (-abs(k - l) / 2) + 1e-12

    def test_gram_matches_inner(self):
        pts = [3, 17, 50, 90]
        gram = theta_gram(100, pts)
        for i, a in enumerate(pts):
            for j, b in enumerate(pts):
                assert gram[i, j] == pytest.approx(theta_inner(100, a, b), abs=1e-15)


class TestCoverageFactor:
    """Tests for the contrast attenuation factor."""

    def test_exact_match(self):
        assert coverage_factor(1000, 300, 300) == 1.0

    def test_example(self):
        value = coverage_factor(1000, 500, 477, 0.05)
        assert value == pytest.approx(math.sqrt(477 / 500) * math.sqrt(500 / 523), abs=1e-12)
        assert value >= (1 + 2 * 0.05) ** -0.5

    def test_outside_bracket(self):
        with pytest.raises(InputError, match="grid point does not cover t"):
            coverage_factor(1000, 500, 400, 0.05)

    def test_random_bounds(self, rng):
        for _ in range(10000):
            n = int(rng.integers(4, 100000))
            t_star = int(rng.integers(1, n // 2 + 1))
            delta = float(rng.uniform(0.01, 1.0))
            lo = math.floor(t_star / (1 + delta)) + 1
            t_tilde = int(rng.integers(max(lo, 1), t_star + 1))
            f = coverage_factor(n, t_star, t_tilde, delta)
            assert (1 + 2 * delta) ** -0.5 - 1e-12 <= f <= 1.0 + 1e-15

    def test_covering_point_on_grid(self):
        n = 2000
        grid = build_upper_grid(n)
        bound = (1 + 2 * grid.delta) ** -0.5
        for t in range(1, n // 2 + 1):
            g = covering_point(grid, t)
            assert coverage_factor(n, t, g, grid.delta) >= bound - 1e-12
