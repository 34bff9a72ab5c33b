"""Checkable forms of the auxiliary probability facts used by the oracles."""

import math
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln

from ..contrasts import Side
from ..errors import InputError


def chernoff_bound(n: int, j: int, s: float) -> float:
    """
    Tail bound for n·K(j/n, U_(j)) > s with U_(j) the j-th uniform order statistic.

    (1 + 9/e)e^{−s} for j = 1 and e√2·j·e^{−(1−1/j)s} for j ≥ 2. May exceed 1.
    """
    if n <= 2:
        raise InputError("lemma requires n > 2")
    if not 1 <= j <= n:
        raise InputError("order index outside [1, n]")
    if not s > 0:
        raise InputError("tail level must be positive")
    if j == 1:
        return (1.0 + 9.0 / math.e) * math.exp(-s)
    return math.e * math.sqrt(2.0) * j * math.exp(-(1.0 - 1.0 / j) * s)


def chernoff_moment_bound(n: int, j: int, s: float, lam: Optional[float] = None) -> float:
    """
    Markov bound e^{−λs}·E[e^{λ n K(j/n, U_(j))}] evaluated exactly with U_(j) ~ Beta(j, n−j+1).

    λ defaults to 1 − 1/j (1/2 when j = 1).
    """
    if n <= 2:
        raise InputError("lemma requires n > 2")
    if not 1 <= j <= n - 1:
        raise InputError("order index outside [1, n-1]")
    if lam is None:
        lam = 0.5 if j == 1 else 1.0 - 1.0 / j
    if not 0.0 < lam < 1.0:
        raise InputError("lambda must lie in (0, 1)")
    x = j / n
    keep = 1.0 - lam
    log_value = (
        -lam * s
        + lam * j * math.log(x) + lam * (n - j) * math.log1p(-x)
        + gammaln(n + 1) - gammaln(j) - gammaln(n - j + 1)
        + gammaln(j * keep) + gammaln((n - j) * keep + 1) - gammaln(n * keep + 1)
    )
    return math.exp(log_value)


def sample_order_statistic(n: int, j: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draws of the j-th smallest of n uniforms, via its Beta(j, n−j+1) law."""
    if not 1 <= j <= n:
        raise InputError("order index outside [1, n]")
    return rng.beta(j, n - j + 1, size=size)


def lrt_error_lower_bound(log_lr_under_h1, k: float) -> float:
    """(1/k)·P̂₁(LR ≤ k): a floor on the sum of Type I and Type II errors of any test."""
    if not k > 0:
        raise InputError("k must be positive")
    values = np.asarray(log_lr_under_h1, dtype=float)
    if values.size == 0:
        raise InputError("no draws")
    return float(np.mean(values <= math.log(k)) / k)


def in_alternative_space(theta, rho: float, s: int, side: Union[Side, str] = Side.ONE,
                         rtol: float = 1e-9) -> bool:
    """
    Θ₁ membership of a mean matrix.

    Every row must be constant or change exactly once, all changes at one
    common column t*, and at least s rows must have normalized jump
    √(t*(n−t*)/n)·(μ₁ − μ₂) ≥ ρ (absolute value when two-sided).
    """
    theta = np.asarray(theta, dtype=float)
    if theta.ndim != 2 or theta.shape[1] < 2:
        raise InputError("mean matrix must be p×n with n >= 2")
    side = Side.parse(side)
    n = theta.shape[1]
    scale = max(1.0, float(np.abs(theta).max()))
    steps = np.abs(np.diff(theta, axis=1)) > rtol * scale
    per_row = steps.sum(axis=1)
    if (per_row > 1).any():
        return False
    changed = np.flatnonzero(per_row == 1)
    if changed.size == 0:
        return s <= 0
    split_columns = np.unique(np.argmax(steps[changed], axis=1))
    if split_columns.size != 1:
        return False
    t_star = int(split_columns[0]) + 1
    jumps = math.sqrt(t_star * (n - t_star) / n) * (theta[changed, 0] - theta[changed, -1])
    if side is Side.TWO:
        jumps = np.abs(jumps)
    return int(np.sum(jumps >= rho * (1.0 - rtol))) >= s
