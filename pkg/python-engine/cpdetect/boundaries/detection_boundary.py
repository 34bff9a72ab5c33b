"""
Closed-form detection boundaries, returned as squared radii ρ².

Regime-1 (triple-log calibration) boundaries are piecewise in (a, β) with the
left case owning each breakpoint. Regime-2 (double-log) uses r₂* with
ρ² = 2·r₂*·log p.
"""

import math
from dataclasses import dataclass
from enum import Enum

from ..errors import InputError


class CaseLabel(str, Enum):
    DENSE = "Dense"
    MODERATE = "Moderate"
    SPARSE = "Sparse"
    ULTRA_SPARSE = "UltraSparse"
    BETA_34 = "Beta34"
    BETA_1_MINUS = "Beta1Minus"
    BETA_ONE = "BetaOne"
    RATE_ONLY = "RateOnly"


@dataclass(frozen=True)
class BoundaryValue:
    rho_squared: float
    case_label: CaseLabel

    @property
    def rho(self) -> float:
        return math.sqrt(self.rho_squared)

    def to_dict(self) -> dict:
        return {"rho_squared": self.rho_squared, "rho": self.rho, "case_label": self.case_label.value}


def _log_p(p: float) -> float:
    if not p > 1.0:
        raise InputError("calibration out of range: p must exceed 1")
    return math.log(p)


def _check_regime1(a: float, beta: float, p: float) -> float:
    if not a > 0.0:
        raise InputError("calibration out of range: a must be positive")
    if not 0.0 < beta < 1.0:
        raise InputError("calibration out of range: beta must lie in (0, 1)")
    return _log_p(p)


def regime1_case(a: float, beta: float) -> CaseLabel:
    if a <= 1.0 - 2.0 * beta:
        return CaseLabel.DENSE
    if a <= 1.0 - 4.0 * beta / 3.0:
        return CaseLabel.MODERATE
    if a <= 1.0 - beta:
        return CaseLabel.SPARSE
    return CaseLabel.ULTRA_SPARSE


def _regime1(a: float, beta: float, p: float, dense_scale: float) -> BoundaryValue:
    log_p = _check_regime1(a, beta, p)
    case = regime1_case(a, beta)
    if case is CaseLabel.DENSE:
        rho2 = math.exp(dense_scale * (a - (1.0 - 2.0 * beta)) * log_p)
    elif case is CaseLabel.MODERATE:
        rho2 = (a - (1.0 - 2.0 * beta)) * log_p
    elif case is CaseLabel.SPARSE:
        rho2 = 2.0 * (math.sqrt(1.0 - a) - math.sqrt(max(1.0 - a - beta, 0.0))) ** 2 * log_p
    else:
        rho2 = math.exp((a - (1.0 - beta)) * log_p)
    return BoundaryValue(rho_squared=rho2, case_label=case)


def boundary_one_sided(a: float, beta: float, p: float) -> BoundaryValue:
    """Squared critical radius for a decreasing change under the triple-log calibration."""
    return _regime1(a, beta, p, dense_scale=1.0)


def boundary_two_sided(a: float, beta: float, p: float) -> BoundaryValue:
    """As boundary_one_sided except the dense exponent halves."""
    return _regime1(a, beta, p, dense_scale=0.5)


def r2_star(a: float, beta: float) -> float:
    """Coefficient r with ρ² = 2 r log p under the double-log calibration."""
    if not a > 0.0:
        raise InputError("calibration out of range: a must be positive")
    if not 0.5 < beta <= 1.0:
        raise InputError("second-regime boundary defined for sparse β only")
    if beta <= 0.75:
        return beta - 0.5
    if beta < 1.0:
        return (1.0 - math.sqrt(1.0 - beta)) ** 2
    return 1.0 + a


def boundary_regime2(a: float, beta: float, p: float) -> BoundaryValue:
    r = r2_star(a, beta)
    if beta <= 0.75:
        case = CaseLabel.BETA_34
    elif beta < 1.0:
        case = CaseLabel.BETA_1_MINUS
    else:
        case = CaseLabel.BETA_ONE
    return BoundaryValue(rho_squared=2.0 * r * _log_p(p), case_label=case)


def regime2_rate(beta: float, p: float) -> BoundaryValue:
    """Order of the radius for β ≤ 1/2 in the double-log regime; no constant attached."""
    if not 0.0 < beta <= 0.5:
        raise InputError("calibration out of range: rate-only branch needs beta in (0, 1/2]")
    return BoundaryValue(rho_squared=math.exp((beta - 0.5) * _log_p(p)), case_label=CaseLabel.RATE_ONLY)


def idj_mu_star(beta: float, p: float) -> float:
    """Squared critical signal of sparse normal-mixture detection (the a ↓ 0 limit)."""
    if not 0.0 < beta < 1.0:
        raise InputError("calibration out of range: beta must lie in (0, 1)")
    log_p = _log_p(p)
    if beta <= 0.5:
        return math.exp((2.0 * beta - 1.0) * log_p)
    if beta <= 0.75:
        return (2.0 * beta - 1.0) * log_p
    return 2.0 * (1.0 - math.sqrt(1.0 - beta)) ** 2 * log_p


def submatrix_reduction_rho_squared(beta: float, p: float) -> float:
    """2β log p: the one-sided boundary at the sparse/ultra-sparse junction a = 1 − β."""
    if not 0.0 < beta < 1.0:
        raise InputError("calibration out of range: beta must lie in (0, 1)")
    return 2.0 * beta * _log_p(p)
