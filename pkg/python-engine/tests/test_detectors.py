"""
Tests for the Berk-Jones scan, the PBJ and max tests and their combination.
"""

import math

import numpy as np
import pytest
from scipy import stats

from cpdetect.contrasts import Side, contrast_matrix
from cpdetect.detectors import (
    DEGENERATE_THRESHOLD,
    bj_at_column,
    combined_decision,
    combined_test,
    max_decision,
    max_test,
    max_threshold,
    pbj_decision,
    pbj_statistic,
    pbj_test,
    pbj_threshold,
)
from cpdetect.errors import InputError
from cpdetect.grids import Grid, build_upper_grid, resolve_scan_grid
from cpdetect.simulation import AlternativeSpec, generate_alternative, generate_null, substream


def _kl(x, t):
    first = 0.0 if x == 0 else x * math.log(x / t)
    second = 0.0 if x == 1 else (1 - x) * math.log((1 - x) / (1 - t))
    return first + second


def _naive_pbj(X, points, side):
    """Independent loop implementation of the penalized statistic."""
    p, n = X.shape
    best = -math.inf
    for t in points:
        pv = []
        for j in range(p):
            y = math.sqrt(t * (n - t) / n) * (X[j, :t].mean() - X[j, t:].mean())
            pv.append(stats.norm.sf(y) if side == "one" else 2 * stats.norm.sf(abs(y)))
        pv.sort()
        col = max(p * _kl((j + 1) / p, max(q, 1e-300)) for j, q in enumerate(pv))
        best = max(best, col)
    return best - 2 * math.log(len(points))


class TestBjAtColumn:
    """Tests for the single-column Berk-Jones value."""

    def test_all_half(self):
        value, j = bj_at_column([0.5] * 4)
        assert value == pytest.approx(4 * math.log(2), abs=1e-12)
        assert j == 4

    def test_four_values(self):
        value, j = bj_at_column([0.3, 0.1, 0.4, 0.2])
        assert value == pytest.approx(-4 * math.log(0.4), abs=1e-12)
        assert value == pytest.approx(3.6652, abs=1e-4)
        assert j == 4

    def test_empty(self):
        with pytest.raises(InputError, match="no rows"):
            bj_at_column([])

    def test_matches_observed_lattice(self, rng):
        for _ in range(200):
            p = int(rng.integers(1, 60))
            pv = rng.uniform(size=p) ** rng.uniform(0.5, 4)
            value, _ = bj_at_column(pv)
            brute = max(p * _kl(np.count_nonzero(pv <= q) / p, q) for q in pv)
            assert value == pytest.approx(brute, abs=1e-9)

    def test_nonnegative(self, rng):
        for _ in range(50):
            assert bj_at_column(rng.uniform(size=30))[0] >= 0.0


class TestPbjStatistic:
    """Tests for the penalized grid maximum."""

    def test_degenerate_sizes(self):
        X = np.array([[0.0, 0.0]])
        result = pbj_statistic(X, resolve_scan_grid(2), Side.ONE)
        assert result.statistic == pytest.approx(math.log(2), abs=1e-12)
        assert result.penalized == pytest.approx(math.log(2), abs=1e-12)
        assert result.argmax_t == 1

    def test_two_sided_sign_flip(self, rng):
        X = rng.normal(size=(50, 200))
        grid = build_upper_grid(200)
        assert pbj_statistic(X, grid, Side.TWO).statistic == pbj_statistic(-X, grid, Side.TWO).statistic

    def test_matches_naive_reference(self):
        X = generate_null(100, 256, None, substream(7, 0, 0)).values
        grid = build_upper_grid(256, 0.1)
        for side in ("one", "two"):
            expected = _naive_pbj(X, grid.points, side)
            assert pbj_statistic(X, grid, side).penalized == pytest.approx(expected, abs=1e-9)

    def test_penalty_exact(self, rng):
        X = rng.normal(size=(40, 500))
        grid = build_upper_grid(500)
        result = pbj_statistic(X, grid, Side.ONE)
        singles = [pbj_statistic(X, Grid(n=500, points=(t,), flavor="full"), Side.ONE).statistic
                   for t in grid.points]
        assert result.statistic == max(singles)
        assert result.penalized == result.statistic - 2 * math.log(len(grid))
        assert result.argmax_t == grid.points[int(np.argmax(singles))]


class TestThresholds:
    """Tests for the threshold formulas."""

    def test_pbj_threshold(self):
        assert pbj_threshold(100, 0.5) == pytest.approx(23.0259, abs=1e-4)
        assert pbj_threshold(100, 2.0) == pytest.approx(36.8414, abs=1e-4)

    def test_max_threshold(self):
        assert max_threshold(100, 50, 2.0) == pytest.approx(math.sqrt(4 * math.log(5000)), abs=1e-12)
        assert max_threshold(100, 50, 2.0) == pytest.approx(5.835, abs=1e-3)

    @pytest.mark.parametrize("gamma", [0.0, -1.0])
    def test_gamma_must_be_positive(self, gamma):
        with pytest.raises(InputError, match="penalty exponent must be positive"):
            pbj_threshold(100, gamma)
        with pytest.raises(InputError, match="penalty exponent must be positive"):
            pbj_test(np.zeros((2, 8)), resolve_scan_grid(8), Side.ONE, gamma)


class TestMaxTest:
    """Tests for ψ_max."""

    def test_degenerate_edge(self):
        X = np.array([[3.0 * math.sqrt(2.0), 0.0]])
        decision = max_test(X, resolve_scan_grid(2), 2.0)
        assert decision.statistic == pytest.approx(3.0)
        assert decision.threshold == 0.0
        assert decision.reject
        assert DEGENERATE_THRESHOLD in decision.flags

    def test_single_elevated_row(self):
        p, n = 100, 256
        grid = build_upper_grid(n)
        threshold = max_threshold(p, len(grid), 2.0)
        t_star = grid.points[len(grid) // 2 - 1]
        spec = AlternativeSpec(p=p, n=n, t_star=t_star, support=(0,), rho=1.5 * threshold)
        rejections = sum(max_test(generate_alternative(spec, substream(11, 1, i)), grid, 2.0).reject
                         for i in range(100))
        assert rejections >= 95


class TestCombined:
    """Tests for the disjunction of ψ_PBJ and ψ_max."""

    def test_both_accept(self):
        X = generate_null(100, 256, None, substream(3, 0, 0))
        decision = combined_test(X, build_upper_grid(256), Side.ONE, 2.0)
        assert not decision.components["pbj"].reject
        assert not decision.components["max"].reject
        assert not decision.reject
        assert decision.statistic == max(decision.components["pbj"].margin, decision.components["max"].margin)

    def test_max_only(self):
        p, n = 100, 256
        grid = build_upper_grid(n)
        t_star = grid.points[len(grid) // 2 - 1]
        X = generate_null(p, n, None, substream(5, 0, 0)).values.copy()
        jump = 7.5 * math.sqrt(n / (t_star * (n - t_star)))
        X[0] = 0.0
        X[0, :t_star] = jump
        decision = combined_test(X, grid, Side.ONE, 2.0)
        assert decision.components["max"].reject
        assert not decision.components["pbj"].reject
        assert decision.reject

    def test_null_rate_union(self):
        p, n = 50, 256
        grid = build_upper_grid(n)
        counts = {"pbj": 0, "max": 0, "combined": 0}
        for i in range(200):
            Y = contrast_matrix(generate_null(p, n, None, substream(17, 0, i)), grid)
            decision = combined_decision(Y, Side.ONE, 2.0)
            counts["pbj"] += decision.components["pbj"].reject
            counts["max"] += decision.components["max"].reject
            counts["combined"] += decision.reject
        assert counts["combined"] <= counts["pbj"] + counts["max"]
        assert counts["combined"] <= 4


@pytest.mark.slow
class TestNullCalibration:
    """Type I control at p=200, n=2000, γ=2."""

    def test_type_one(self):
        p, n = 200, 2000
        grid = build_upper_grid(n)
        rejections = {"pbj_one": 0, "pbj_two": 0, "max": 0}
        for i in range(200):
            Y = contrast_matrix(generate_null(p, n, None, substream(20240917, 0, i)), grid)
            rejections["pbj_one"] += pbj_decision(Y, Side.ONE, 2.0).reject
            rejections["pbj_two"] += pbj_decision(Y, Side.TWO, 2.0).reject
            rejections["max"] += max_decision(Y, 2.0).reject
        assert all(count <= 2 for count in rejections.values()), rejections


class TestMonotonicity:
    """Raising the pre-change segment of the support never removes a rejection."""

    def test_paired_seeds(self):
        p, n, t_star = 200, 512, 180
        grid = build_upper_grid(n)
        spec = AlternativeSpec(p=p, n=n, t_star=t_star, support=tuple(range(10)), rho=2.5)
        for i in range(20):
            X = generate_alternative(spec, substream(23, 1, i)).values
            raised = X.copy()
            raised[:10, :t_star] += 0.3
            before = pbj_test(X, grid, Side.ONE, 2.0).reject
            after = pbj_test(raised, grid, Side.ONE, 2.0).reject
            assert after >= before
