"""
Maps between desk dimensions (p, n, s) and phase-plane coordinates (a, β).

ThreeLog: log log log n = a log p.  TwoLog: log log n = a log p.
Both: s = p^{1−β}.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from ..config import Config
from ..errors import InputError


class Regime(str, Enum):
    THREE_LOG = "ThreeLog"
    TWO_LOG = "TwoLog"

    @classmethod
    def parse(cls, value: Union["Regime", str]) -> "Regime":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "").replace("-", "")
        if key in ("threelog", "three", "regime1", "1"):
            return cls.THREE_LOG
        if key in ("twolog", "two", "regime2", "2"):
            return cls.TWO_LOG
        raise InputError(f"unknown regime '{value}' (expected ThreeLog|TwoLog)")


@dataclass(frozen=True)
class Calibration:
    regime: Regime
    a: float
    beta: float
    p: float


@dataclass(frozen=True)
class Dimensions:
    """Result of the inverse map. n is clamped; log_n is exact (possibly inf)."""

    n: int
    log_n: float
    s: float
    saturated: bool


@dataclass(frozen=True)
class ReferenceRates:
    collier: float
    liu: float
    up_to_constants: bool = True

    def to_dict(self) -> dict:
        return {"collier": self.collier, "liu": self.liu, "up_to_constants": self.up_to_constants}


def _log_p(p: float) -> float:
    if not p > 1.0:
        raise InputError("calibration out of range: p must exceed 1")
    return math.log(p)


def _resolve_log_n(n: Optional[Union[int, float]], log_n: Optional[float]) -> float:
    if log_n is not None:
        return float(log_n)
    if n is None:
        raise InputError("either n or log_n is required")
    if not n > 1:
        raise InputError("n too small for regime")
    # math.log handles arbitrarily large Python ints
    return math.log(n)


def calibration_from_dims(p: float, n: Optional[Union[int, float]], s: float,
                          regime: Union[Regime, str], log_n: Optional[float] = None) -> Calibration:
    """(p, n, s) → (a, β) for the given regime."""
    regime = Regime.parse(regime)
    log_p = _log_p(p)
    if not 1 <= s <= p:
        raise InputError("calibration out of range: s must lie in [1, p]")
    ln = _resolve_log_n(n, log_n)
    if ln <= 0.0:
        raise InputError("n too small for regime")
    loglog = math.log(ln)
    if regime is Regime.THREE_LOG:
        if loglog <= 0.0 or math.log(loglog) <= 0.0:
            raise InputError("n too small for regime")
        a = math.log(loglog) / log_p
    else:
        if loglog <= 0.0:
            raise InputError("n too small for regime")
        a = loglog / log_p
    beta = 1.0 - math.log(s) / log_p
    return Calibration(regime=regime, a=a, beta=beta, p=p)


def dims_from_calibration(calibration: Calibration) -> Dimensions:
    """(a, β) → (n, s). n saturates at 2^62; ThreeLog n is astronomically large."""
    log_p = _log_p(calibration.p)
    if calibration.regime is Regime.THREE_LOG:
        try:
            log_n = math.exp(math.exp(calibration.a * log_p))
        except OverflowError:
            log_n = math.inf
    else:
        try:
            log_n = math.exp(calibration.a * log_p)
        except OverflowError:
            log_n = math.inf
    s = math.exp((1.0 - calibration.beta) * log_p)
    limit = math.log(Config.N_CLAMP)
    if log_n >= limit:
        return Dimensions(n=Config.N_CLAMP, log_n=log_n, s=s, saturated=True)
    return Dimensions(n=int(round(math.exp(log_n))), log_n=log_n, s=s, saturated=False)


def reference_rates(p: float, n: Optional[Union[int, float]], s: float,
                    log_n: Optional[float] = None) -> ReferenceRates:
    """Order-level critical radii from the sparse-mean and high-dimensional changepoint literature."""
    if not 1 <= s <= p:
        raise InputError("calibration out of range: s must lie in [1, p]")
    ln = _resolve_log_n(n, log_n)
    if ln < math.log(3):
        raise InputError("reference rates need n >= 3")
    loglog8n = math.log(math.log(8.0) + ln)

    if s >= math.sqrt(p):
        collier = math.sqrt(p)
    else:
        collier = s * math.log(math.e * p / s ** 2)

    dense_cut = math.sqrt(p * loglog8n)
    if s > dense_cut:
        liu = dense_cut
    else:
        liu = s * math.log(math.e * p * loglog8n / s ** 2) + loglog8n
    return ReferenceRates(collier=collier, liu=liu)


def interpolate_beta_bar(beta1: float, beta: float, weight: float = Config.BETA_BAR_WEIGHT) -> float:
    """β̄ = β₁ + w(β − β₁), a point strictly inside (β₁, β) for 0 < w < 1."""
    if not beta1 < beta:
        raise InputError("beta_bar interpolation needs beta1 < beta")
    if not 0.0 < weight < 1.0:
        raise InputError("beta_bar weight must lie in (0, 1)")
    return beta1 + weight * (beta - beta1)
