"""Unit-norm changepoint direction vectors θ^(t) and their closed-form geometry."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import InputError


def _check_split(n: int, t: int):
    if not 1 <= t <= n - 1:
        raise InputError("split outside sequence")


@dataclass(frozen=True)
class ThetaVector:
    """θ^(t): head_value on the first t columns, tail_value on the remaining n − t."""

    n: int
    t: int
    head_value: float
    tail_value: float

    def squared_norm(self) -> float:
        return self.t * self.head_value ** 2 + (self.n - self.t) * self.tail_value ** 2

    def materialize(self) -> np.ndarray:
        """Explicit length-n vector. Oracle use only."""
        vec = np.full(self.n, self.tail_value)
        vec[: self.t] = self.head_value
        return vec


def theta_vector(n: int, t: int) -> ThetaVector:
    """
    θ^(t) with head = √((n−t)/(n t)) and tail = −√(t/(n (n−t))).

    ⟨Z, θ^(t)⟩ equals the contrast √(t(n−t)/n)·(mean(Z[:t]) − mean(Z[t:])).
    """
    _check_split(n, t)
    head = math.sqrt((n - t) / (n * t))
    tail = -math.sqrt(t / (n * (n - t)))
    return ThetaVector(n=n, t=t, head_value=head, tail_value=tail)


def theta_inner(n: int, t1: int, t2: int) -> float:
    """⟨θ^(t1), θ^(t2)⟩ = √(lo/hi)·√((n−hi)/(n−lo)) with lo = min, hi = max."""
    _check_split(n, t1)
    _check_split(n, t2)
    lo, hi = min(t1, t2), max(t1, t2)
    return math.sqrt(lo / hi) * math.sqrt((n - hi) / (n - lo))


def theta_gram(n: int, points) -> np.ndarray:
    """Matrix of theta_inner over a list of splits."""
    pts = np.asarray(points, dtype=float)
    if pts.size and (pts.min() < 1 or pts.max() > n - 1):
        raise InputError("split outside sequence")
    lo = np.minimum.outer(pts, pts)
    hi = np.maximum.outer(pts, pts)
    return np.sqrt(lo / hi) * np.sqrt((n - hi) / (n - lo))


def coverage_factor(n: int, t_star: int, t_tilde: int, delta: Optional[float] = None) -> float:
    """
    Attenuation of the contrast mean when scanning at t_tilde instead of t*.

    F = √(t̃/t*)·√((n−t*)/(n−t̃)); when δ is given t̃ must lie in (t*/(1+δ), t*],
    which forces F ≥ (1+2δ)^{-1/2} for t* ≤ n/2.
    """
    _check_split(n, t_star)
    _check_split(n, t_tilde)
    if 2 * t_star > n:
        raise InputError("coverage factor defined for t* <= n/2")
    if t_tilde > t_star:
        raise InputError("grid point does not cover t*")
    if delta is not None and not t_tilde * (1.0 + delta) > t_star:
        raise InputError("grid point does not cover t*")
    return math.sqrt(t_tilde / t_star) * math.sqrt((n - t_star) / (n - t_tilde))
