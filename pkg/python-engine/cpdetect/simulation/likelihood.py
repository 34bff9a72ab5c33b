"""
Likelihood ratio of a mixture prior against the zero-mean null.

Under a mean ρθ^(k) in row j the density ratio is exp(ρY_{jk} − ρ²/2), so the
likelihood ratio depends on X only through the contrasts at the prior grid.
Everything is accumulated in log space.
"""

import logging
import math

import numpy as np
from scipy.special import logsumexp

from ..contrasts import Side, contrast_matrix
from ..detectors import TestDecision
from ..errors import InputError, NumericFailure
from ..grids import theta_gram
from .scenarios import EvenSpread, MixturePrior, SingleRow, SparseMixture

logger = logging.getLogger(__name__)

_LOG_TWO = math.log(2.0)
_SWITCH = 30.0


def _log_mix(epsilon: float, z: np.ndarray) -> np.ndarray:
    """log(1 − ε + ε e^z), stable for small ε e^z and for large z."""
    small = np.log1p(epsilon * np.expm1(np.minimum(z, _SWITCH)))
    large = np.logaddexp(math.log1p(-epsilon), math.log(epsilon) + z)
    return np.where(z < _SWITCH, small, large)


def log_lr_terms(X, prior: MixturePrior) -> np.ndarray:
    """log L_k for each prior grid index k; log LR = logsumexp(terms) − log|grid|."""
    Y = contrast_matrix(X, prior.grid).values
    rho = prior.rho
    half_sq = 0.5 * rho * rho
    if isinstance(prior, SparseMixture):
        if not 0.0 < prior.epsilon < 1.0:
            raise InputError("likelihood ratio needs epsilon in (0, 1)")
        if prior.side is Side.ONE:
            z = rho * Y - half_sq
        else:
            z = np.logaddexp(rho * Y, -rho * Y) - _LOG_TWO - half_sq
        return _log_mix(prior.epsilon, z).sum(axis=0)
    if isinstance(prior, SingleRow):
        return logsumexp(rho * Y - half_sq, axis=0) - math.log(Y.shape[0])
    if isinstance(prior, EvenSpread):
        if prior.s > Y.shape[0]:
            raise InputError("support larger than p")
        return (rho * Y[: prior.s] - half_sq).sum(axis=0)
    raise InputError(f"unknown prior {type(prior).__name__}")


def likelihood_ratio(X, prior: MixturePrior) -> float:
    """log f₁(X)/f₀(X) under the prior."""
    terms = log_lr_terms(X, prior)
    value = float(logsumexp(terms) - math.log(terms.size))
    if not math.isfinite(value):
        raise NumericFailure("likelihood ratio not representable")
    return value


def lrt_test(X, prior: MixturePrior) -> TestDecision:
    """Reject iff log LR > 0 (LR = 1 accepts)."""
    log_lr = likelihood_ratio(X, prior)
    return TestDecision(statistic=log_lr, threshold=0.0, reject=log_lr > 0.0)


def log_lr_second_moment(prior: MixturePrior, p: int) -> float:
    """log E₀[LR²] in closed form."""
    grid = prior.grid
    gram = theta_gram(grid.n, grid.points)
    energy = prior.rho ** 2 * gram
    if isinstance(prior, SparseMixture):
        eps_sq = prior.epsilon ** 2
        if prior.side is Side.ONE:
            excess = np.expm1(energy)
        else:
            excess = np.cosh(energy) - 1.0
        pair_terms = p * np.log1p(eps_sq * excess)
    elif isinstance(prior, SingleRow):
        pair_terms = np.log1p(np.expm1(energy) / p)
    elif isinstance(prior, EvenSpread):
        pair_terms = prior.s * energy
    else:
        raise InputError(f"unknown prior {type(prior).__name__}")
    return float(logsumexp(pair_terms) - 2.0 * math.log(len(grid)))


def lr_second_moment(prior: MixturePrior, p: int) -> float:
    """E₀[LR²]; close to 1 when the mixture is indistinguishable from the null."""
    try:
        return math.exp(log_lr_second_moment(prior, p))
    except OverflowError:
        raise NumericFailure("likelihood ratio not representable") from None


def cross_term_mean(p: int, epsilon: float, rho: float, inner: float,
                    side: Side = Side.ONE) -> float:
    """
    E[L_k | k*] = (1 − ε² + ε²·g)^p with g = e^{ρ²c} (one-sided) or cosh(ρ²c) (two-sided),
    c = ⟨θ^(k), θ^(k*)⟩.
    """
    energy = rho * rho * inner
    growth = math.expm1(energy) if Side.parse(side) is Side.ONE else math.cosh(energy) - 1.0
    return math.exp(p * math.log1p(epsilon * epsilon * growth))
