"""
Candidate changepoint grids.

UpperSymmetric grids drive the PBJ and max tests; LowerGeometric grids carry
the uniform changepoint of the least-favorable mixture priors.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from ..config import Config
from ..errors import InputError

logger = logging.getLogger(__name__)

AUTO = "auto"

_POWER_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Strictly increasing candidate columns in [1, n−1]."""

    n: int
    points: Tuple[int, ...]
    flavor: str  # "upper" | "lower" | "full"
    delta: Optional[float] = None
    base: Optional[float] = None
    fallback: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        pts = self.points
        if not pts:
            raise InputError("empty grid")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise InputError("grid points must be strictly increasing")
        if pts[0] < 1 or pts[-1] > self.n - 1:
            raise InputError("grid point outside [1, n-1]")

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.int64)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "flavor": self.flavor,
            "delta": self.delta,
            "base": self.base,
            "points": list(self.points),
            "fallback": self.fallback,
        }


def auto_delta(n: int) -> float:
    """δ = 1/log log n, capped at 0.25 for n < 10^4."""
    if n < 3 or math.log(math.log(n)) <= 1.0:
        raise InputError("delta auto-rule undefined at this n")
    delta = 1.0 / math.log(math.log(n))
    if n < Config.DELTA_CAP_BELOW_N:
        delta = min(delta, Config.DELTA_CAP)
    return delta


def _geometric_powers(ratio: float, upper: float) -> np.ndarray:
    """ratio^i for 0 ≤ i ≤ ⌊log_ratio(upper)⌋."""
    i_max = int(math.floor(math.log(upper) / math.log(ratio) + _POWER_TOL))
    return ratio ** np.arange(i_max + 1, dtype=float)


def _snap(values: np.ndarray) -> np.ndarray:
    """Round powers that are integers up to floating error (e.g. 2.0**3)."""
    nearest = np.rint(values)
    return np.where(np.abs(values - nearest) < _POWER_TOL, nearest, values)


def build_upper_grid(n: int, delta: Union[float, str] = AUTO) -> Grid:
    """
    Symmetric geometric grid 𝒯.

    Points are ⌊(1+δ)^i⌋ and ⌊n − (1+δ)^i⌋ for 0 ≤ i ≤ log_{1+δ}(n/2), together
    with the ceilings ⌈(1+δ)^i⌉ and their mirrors. The ceilings make every
    t* ≤ n/2 land in some (t*/(1+δ), t*] and make the grid exactly symmetric;
    for integer powers they add nothing.
    """
    n = int(n)
    if n < 4:
        raise InputError("sequence too short")
    if delta == AUTO or delta is None:
        delta = auto_delta(n)
    delta = float(delta)
    if not delta > 0.0 or not math.isfinite(delta):
        raise InputError("delta must be positive")

    powers = _snap(_geometric_powers(1.0 + delta, n / 2.0))
    left = np.concatenate([np.floor(powers), np.ceil(powers)]).astype(np.int64)
    points = np.unique(np.concatenate([left, n - left]))
    points = points[(points >= 1) & (points <= n - 1)]
    logger.debug("upper grid n=%d delta=%.4f size=%d", n, delta, points.size)
    return Grid(n=n, points=tuple(int(p) for p in points), flavor="upper", delta=delta)


def build_lower_grid(n: int, base: Union[float, str] = AUTO) -> Grid:
    """
    Sparse geometric grid 𝒯′ = {⌊b^k⌋ : 1 ≤ k ≤ log_b(n−1)} used by the mixture priors.

    Auto base is log n.
    """
    n = int(n)
    if n < 16:
        raise InputError("sequence too short for the lower grid (n >= 16)")
    if base == AUTO or base is None:
        base = math.log(n)
    base = float(base)
    if not base > 1.0:
        raise InputError("base must exceed 1")

    k_max = int(math.floor(math.log(n - 1) / math.log(base) + _POWER_TOL))
    powers = _snap(base ** np.arange(1, k_max + 1, dtype=float))
    points = np.unique(np.floor(powers).astype(np.int64))
    points = points[(points >= 1) & (points <= n - 1)]
    if points.size == 0:
        raise InputError("base must not exceed n - 1")
    return Grid(n=n, points=tuple(int(p) for p in points), flavor="lower", base=base)


def resolve_scan_grid(n: int, delta: Union[float, str] = AUTO) -> Grid:
    """
    Grid used by detect: build_upper_grid with fallbacks for short sequences.

    Auto δ with n < 16 uses δ = 1; n < 4 scans every column.
    """
    n = int(n)
    if n < 2:
        raise InputError("sequence too short")
    if n < 4:
        logger.info("n=%d below 4, scanning every column", n)
        return Grid(n=n, points=tuple(range(1, n)), flavor="full", fallback="all_columns")
    if (delta == AUTO or delta is None) and math.log(math.log(n)) <= 1.0:
        logger.info("auto delta undefined at n=%d, using delta=1", n)
        grid = build_upper_grid(n, 1.0)
        return Grid(n=grid.n, points=grid.points, flavor=grid.flavor, delta=grid.delta,
                    fallback="delta_1")
    return build_upper_grid(n, delta)


def covering_point(grid: Grid, t_star: int) -> int:
    """
    Grid point standing in for t*.

    For t* ≤ n/2: the largest point in (t*/(1+δ), t*]. For t* > n/2 the mirrored
    rule applies: the smallest point g with n − g in ((n−t*)/(1+δ), n−t*].
    """
    if grid.delta is None:
        raise InputError("covering point requires an upper grid")
    n = grid.n
    if not 1 <= t_star <= n - 1:
        raise InputError("split outside sequence")
    pts = grid.as_array()
    ratio = 1.0 + grid.delta
    if 2 * t_star <= n:
        mask = (pts <= t_star) & (pts * ratio > t_star)
        candidates = pts[mask]
        if candidates.size == 0:
            raise InputError("grid point does not cover t*")
        return int(candidates.max())
    u = n - t_star
    mirrored = n - pts
    mask = (mirrored <= u) & (mirrored * ratio > u)
    candidates = pts[mask]
    if candidates.size == 0:
        raise InputError("grid point does not cover t*")
    return int(candidates.min())
