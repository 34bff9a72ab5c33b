"""Parameter-space descriptions for the data generators."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from ..contrasts import Side
from ..errors import InputError
from ..grids import Grid


def _check_dims(p: int, n: int):
    if p < 1:
        raise InputError("p must be at least 1")
    if n < 2:
        raise InputError("sequence too short")


def _check_base_means(base_means, p: int) -> Optional[Tuple[float, ...]]:
    if base_means is None:
        return None
    values = tuple(float(v) for v in np.ravel(base_means))
    if len(values) != p:
        raise InputError(f"base_means has {len(values)} entries, expected p={p}")
    if not all(math.isfinite(v) for v in values):
        raise InputError("non-finite input")
    return values


@dataclass(frozen=True)
class NullScenario:
    """Θ₀: each row constant at its base mean."""

    p: int
    n: int
    base_means: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        _check_dims(self.p, self.n)
        object.__setattr__(self, "base_means", _check_base_means(self.base_means, self.p))

    def describe(self) -> dict:
        return {"model": "null", "p": self.p, "n": self.n,
                "base_means": None if self.base_means is None else list(self.base_means)}


@dataclass(frozen=True)
class AlternativeSpec:
    """
    Θ₁ member with changepoint t* and support S.

    Rows in S jump by Δ = ρ·√(n/(t*(n−t*))) at t* so the normalized jump is
    exactly ρ; rows outside S stay constant.
    """

    p: int
    n: int
    t_star: int
    support: Tuple[int, ...]
    rho: float
    side: Side = Side.ONE
    sign_pattern: Optional[Tuple[int, ...]] = None
    base_means: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        _check_dims(self.p, self.n)
        if not 1 <= self.t_star <= self.n - 1:
            raise InputError("split outside sequence")
        support = tuple(sorted(int(j) for j in self.support))
        if len(support) > self.p:
            raise InputError("support larger than p")
        if len(set(support)) != len(support) or (support and (support[0] < 0 or support[-1] >= self.p)):
            raise InputError("support rows must be distinct indices in [0, p)")
        if not (self.rho >= 0.0 and math.isfinite(self.rho)):
            raise InputError("rho must be a non-negative finite number")
        side = Side.parse(self.side)
        signs = self.sign_pattern
        if signs is not None:
            signs = tuple(int(v) for v in signs)
            if len(signs) != len(support) or any(v not in (-1, 1) for v in signs):
                raise InputError("sign_pattern needs one ±1 per support row")
            if side is Side.ONE and any(v != 1 for v in signs):
                raise InputError("sign_pattern is only meaningful for two-sided alternatives")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "sign_pattern", signs)
        object.__setattr__(self, "base_means", _check_base_means(self.base_means, self.p))

    @property
    def s(self) -> int:
        return len(self.support)

    @property
    def jump(self) -> float:
        """Raw mean difference Δ = μ_{j1} − μ_{j2}."""
        return self.rho * math.sqrt(self.n / (self.t_star * (self.n - self.t_star)))

    def signs(self) -> np.ndarray:
        if self.sign_pattern is None:
            return np.ones(self.s)
        return np.asarray(self.sign_pattern, dtype=float)

    def describe(self) -> dict:
        return {"model": "alternative", "p": self.p, "n": self.n, "t_star": self.t_star,
                "s": self.s, "support": list(self.support), "rho": self.rho, "side": self.side.value,
                "sign_pattern": None if self.sign_pattern is None else list(self.sign_pattern)}


@dataclass(frozen=True)
class SparseMixture:
    """Each row non-null with probability ε; non-null rows carry ±ρθ^(k*) for a uniform k*."""

    epsilon: float
    rho: float
    grid: Grid
    side: Side = Side.ONE
    beta_bar: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise InputError("epsilon must lie in [0, 1]")
        if not self.rho >= 0.0:
            raise InputError("rho must be non-negative")
        object.__setattr__(self, "side", Side.parse(self.side))

    def describe(self) -> dict:
        return {"model": "sparse_mixture", "epsilon": self.epsilon, "beta_bar": self.beta_bar,
                "rho": self.rho, "side": self.side.value, "grid": list(self.grid.points)}


@dataclass(frozen=True)
class SingleRow:
    """One uniformly chosen row carries ρθ^(k*)."""

    rho: float
    grid: Grid

    def describe(self) -> dict:
        return {"model": "single_row", "rho": self.rho, "grid": list(self.grid.points)}


@dataclass(frozen=True)
class EvenSpread:
    """The first s rows carry ρθ^(k*)."""

    s: int
    rho: float
    grid: Grid

    def __post_init__(self):
        if self.s < 1:
            raise InputError("s must be at least 1")

    def describe(self) -> dict:
        return {"model": "even_spread", "s": self.s, "rho": self.rho, "grid": list(self.grid.points)}


MixturePrior = Union[SparseMixture, SingleRow, EvenSpread]


@dataclass(frozen=True)
class MixtureScenario:
    """A mixture prior placed on p×n data."""

    p: int
    n: int
    prior: MixturePrior

    def __post_init__(self):
        _check_dims(self.p, self.n)
        if self.prior.grid.n != self.n:
            raise InputError("grid/matrix n disagree")
        if isinstance(self.prior, EvenSpread) and self.prior.s > self.p:
            raise InputError("support larger than p")

    def describe(self) -> dict:
        return {"p": self.p, "n": self.n, **self.prior.describe()}


Scenario = Union[NullScenario, AlternativeSpec, MixtureScenario]


def sparse_mixture_from_beta(p: int, beta_bar: float, rho: float, grid: Grid,
                             side: Union[Side, str] = Side.ONE) -> SparseMixture:
    """SparseMixture with ε = p^{−β̄}."""
    if not beta_bar > 0.0:
        raise InputError("beta_bar must be positive")
    return SparseMixture(epsilon=float(p) ** (-beta_bar), rho=rho, grid=grid, side=side, beta_bar=beta_bar)
