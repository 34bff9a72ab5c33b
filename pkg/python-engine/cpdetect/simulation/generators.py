"""Data generators for the null, fixed alternatives and the mixture priors."""

from typing import Optional, Sequence, Tuple

import numpy as np

from ..contrasts import ObservationMatrix, Side
from ..errors import InputError
from ..grids import theta_vector
from .scenarios import (
    AlternativeSpec,
    EvenSpread,
    MixturePrior,
    MixtureScenario,
    NullScenario,
    Scenario,
    SingleRow,
    SparseMixture,
)


def _noise(p: int, n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((p, n))


def _row_constants(base_means: Optional[Sequence[float]], p: int) -> np.ndarray:
    if base_means is None:
        return np.zeros((p, 1))
    means = np.asarray(base_means, dtype=float).reshape(-1, 1)
    if means.shape[0] != p:
        raise InputError(f"base_means has {means.shape[0]} entries, expected p={p}")
    return means


def generate_null(p: int, n: int, base_means: Optional[Sequence[float]],
                  rng: np.random.Generator) -> ObservationMatrix:
    """X_{jt} = μ_j + N(0, 1)."""
    if p < 1 or n < 2:
        raise InputError("observation matrix needs p >= 1 rows and n >= 2 columns")
    return ObservationMatrix(_row_constants(base_means, p) + _noise(p, n, rng))


def alternative_mean(spec: AlternativeSpec) -> np.ndarray:
    """Mean matrix θ: support rows at +Δ/2 then −Δ/2 (times the row sign), others constant."""
    theta = np.repeat(_row_constants(spec.base_means, spec.p), spec.n, axis=1)
    if spec.s:
        half = 0.5 * spec.jump * spec.signs()[:, None]
        rows = np.asarray(spec.support)
        theta[rows, : spec.t_star] += half
        theta[rows, spec.t_star:] -= half
    return theta


def generate_alternative(spec: AlternativeSpec, rng: np.random.Generator) -> ObservationMatrix:
    return ObservationMatrix(alternative_mean(spec) + _noise(spec.p, spec.n, rng))


def draw_mixture_mean(prior: MixturePrior, p: int, n: int,
                      rng: np.random.Generator) -> Tuple[np.ndarray, int, int]:
    """
    Draw (θ, k*, nonnull_count) from a mixture prior.

    k* is uniform over prior.grid indices; the signal row is ρθ^(grid[k*]).
    """
    grid = prior.grid
    if grid.n != n:
        raise InputError("grid/matrix n disagree")
    k_star = int(rng.integers(len(grid)))
    vec = theta_vector(n, grid.points[k_star])
    signal = np.full(n, prior.rho * vec.tail_value)
    signal[: vec.t] = prior.rho * vec.head_value

    theta = np.zeros((p, n))
    if isinstance(prior, SparseMixture):
        nonnull = rng.random(p) < prior.epsilon
        signs = np.ones(p)
        if prior.side is Side.TWO:
            signs = np.where(rng.random(p) < 0.5, -1.0, 1.0)
        rows = np.flatnonzero(nonnull)
        theta[rows] = signs[rows, None] * signal
        return theta, k_star, int(rows.size)
    if isinstance(prior, SingleRow):
        row = int(rng.integers(p))
        theta[row] = signal
        return theta, k_star, 1
    if isinstance(prior, EvenSpread):
        if prior.s > p:
            raise InputError("support larger than p")
        theta[: prior.s] = signal
        return theta, k_star, prior.s
    raise InputError(f"unknown prior {type(prior).__name__}")


def generate_mixture(prior: MixturePrior, p: int, n: int,
                     rng: np.random.Generator) -> Tuple[ObservationMatrix, int, int]:
    theta, k_star, nonnull_count = draw_mixture_mean(prior, p, n, rng)
    return ObservationMatrix(theta + _noise(p, n, rng)), k_star, nonnull_count


def draw(scenario: Scenario, rng: np.random.Generator) -> ObservationMatrix:
    """One observation matrix from any scenario."""
    if isinstance(scenario, NullScenario):
        return generate_null(scenario.p, scenario.n, scenario.base_means, rng)
    if isinstance(scenario, AlternativeSpec):
        return generate_alternative(scenario, rng)
    if isinstance(scenario, MixtureScenario):
        return generate_mixture(scenario.prior, scenario.p, scenario.n, rng)[0]
    raise InputError(f"unknown scenario {type(scenario).__name__}")
