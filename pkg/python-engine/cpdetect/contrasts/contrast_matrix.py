"""
Normalized mean-difference contrasts Y_{jt} and their p-values.

Y_{jt} = √(t(n−t)/n)·(mean(X[j, :t]) − mean(X[j, t:])) = ⟨X_{j:}, θ^(t)⟩,
computed for a whole grid from one prefix sum per row.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
from scipy import special

from ..config import Config
from ..errors import InputError
from ..grids import Grid


class Side(Enum):
    """Alternative direction: one-sided (decreasing change) or two-sided."""

    ONE = "one"
    TWO = "two"

    @classmethod
    def parse(cls, value: Union["Side", str]) -> "Side":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"one": cls.ONE, "onesided": cls.ONE, "one-sided": cls.ONE,
                   "two": cls.TWO, "twosided": cls.TWO, "two-sided": cls.TWO}
        if key not in aliases:
            raise InputError(f"unknown side '{value}' (expected one|two)")
        return aliases[key]


@dataclass(frozen=True, eq=False)
class ObservationMatrix:
    """p×n matrix X = θ + E of finite reals."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 2:
            raise InputError("observation matrix must be two-dimensional")
        if arr.shape[0] < 1 or arr.shape[1] < 2:
            raise InputError("observation matrix needs p >= 1 rows and n >= 2 columns")
        if not np.isfinite(arr).all():
            raise InputError("non-finite input")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def p(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class ContrastMatrix:
    """p×|grid| contrasts; column k belongs to grid.points[k]."""

    grid: Grid
    values: np.ndarray

    @property
    def p(self) -> int:
        return self.values.shape[0]


def _as_observations(X) -> ObservationMatrix:
    if isinstance(X, ObservationMatrix):
        return X
    return ObservationMatrix(np.asarray(X, dtype=float))


def _prefix_sums(values: np.ndarray) -> np.ndarray:
    n = values.shape[1]
    dtype = np.longdouble if n > Config.EXTENDED_PRECISION_N else np.float64
    prefix = np.zeros((values.shape[0], n + 1), dtype=dtype)
    prefix[:, 1:] = np.cumsum(values, axis=1, dtype=dtype)
    return prefix


def _contrasts_from_prefix(prefix: np.ndarray, splits: np.ndarray, n: int) -> np.ndarray:
    t = splits.astype(prefix.dtype)
    head_sum = prefix[:, splits]
    total = prefix[:, n][:, None]
    diff = head_sum / t - (total - head_sum) / (n - t)
    scale = np.sqrt(t * (n - t) / n)
    return np.asarray(scale * diff, dtype=np.float64)


def contrast_at(X, t: int) -> np.ndarray:
    """Contrast vector (one entry per row) at split t."""
    obs = _as_observations(X)
    if not 1 <= t <= obs.n - 1:
        raise InputError("split outside sequence")
    prefix = _prefix_sums(obs.values)
    return _contrasts_from_prefix(prefix, np.array([t]), obs.n)[:, 0]


def contrast_matrix(X, grid: Grid) -> ContrastMatrix:
    """Contrasts at every grid point, O(p·(n + |grid|))."""
    obs = _as_observations(X)
    if grid.n != obs.n:
        raise InputError("grid/matrix n disagree")
    prefix = _prefix_sums(obs.values)
    values = _contrasts_from_prefix(prefix, grid.as_array(), obs.n)
    values.setflags(write=False)
    return ContrastMatrix(grid=grid, values=values)


def mean_contrast(theta: np.ndarray, grid: Grid) -> np.ndarray:
    """Noise-free contrasts of a mean matrix θ: the signal each grid column sees."""
    return contrast_matrix(ObservationMatrix(theta), grid).values


def pvalues(Y: Union[ContrastMatrix, np.ndarray], side: Union[Side, str]) -> np.ndarray:
    """
    One-sided Φ̄(Y) or two-sided 2Φ̄(|Y|), clamped to [1e-300, 1].
    """
    side = Side.parse(side)
    values = Y.values if isinstance(Y, ContrastMatrix) else np.asarray(Y, dtype=float)
    if side is Side.ONE:
        pv = special.ndtr(-values)
    else:
        pv = 2.0 * special.ndtr(-np.abs(values))
    return np.clip(pv, Config.CLAMP_FLOOR, 1.0)
