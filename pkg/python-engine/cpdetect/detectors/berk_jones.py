"""
Berk-Jones scan over ordered p-values and its penalized maximum over a grid.

For one column the statistic is max_j p·K(j/p, p_(j)); the PBJ statistic is
the maximum of that over grid columns minus 2 log|grid|.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ..config import Config
from ..contrasts import ContrastMatrix, Side, contrast_matrix, pvalues
from ..errors import InputError, NumericFailure
from ..grids import Grid
from ..numerics import bern_kl_terms

logger = logging.getLogger(__name__)

_CLAMP_CEIL = float(np.nextafter(1.0, 0.0))


@dataclass(frozen=True)
class BjScanResult:
    """Grid maximum of the Berk-Jones column statistics."""

    statistic: float
    argmax_grid_index: int
    argmax_order_index: int
    penalized: float
    argmax_t: int
    grid_size: int


def bj_columns(pvals: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Column-wise Berk-Jones values for a p×m p-value matrix.

    Returns (values, argmax_j) with argmax_j 1-based and the smallest j on ties.
    """
    pv = np.asarray(pvals, dtype=float)
    if pv.ndim == 1:
        pv = pv[:, None]
    p = pv.shape[0]
    if p == 0:
        raise InputError("no rows")
    ordered = np.clip(np.sort(pv, axis=0), Config.CLAMP_FLOOR, _CLAMP_CEIL)
    fractions = (np.arange(1, p + 1, dtype=float) / p)[:, None]
    terms = bern_kl_terms(fractions, ordered)
    argmax = np.argmax(terms, axis=0)
    values = p * terms[argmax, np.arange(terms.shape[1])]
    return values, argmax + 1


def bj_at_column(pvals) -> Tuple[float, int]:
    """max over j of p·K(j/p, p_(j)) for one vector of p-values, with the attaining j."""
    pv = np.asarray(pvals, dtype=float).ravel()
    if pv.size == 0:
        raise InputError("no rows")
    if np.isnan(pv).any() or (pv < 0).any() or (pv > 1).any():
        raise InputError("probability outside [0, 1]")
    values, argmax = bj_columns(pv)
    return float(values[0]), int(argmax[0])


def scan_contrasts(Y: ContrastMatrix, side: Union[Side, str]) -> BjScanResult:
    """PBJ statistic from precomputed contrasts."""
    values, argmax_j = bj_columns(pvalues(Y, side))
    if not np.isfinite(values).all():
        raise NumericFailure("Berk-Jones statistic not finite")
    k = int(np.argmax(values))
    statistic = float(values[k])
    grid = Y.grid
    penalized = statistic - 2.0 * math.log(len(grid))
    return BjScanResult(
        statistic=statistic,
        argmax_grid_index=k,
        argmax_order_index=int(argmax_j[k]),
        penalized=penalized,
        argmax_t=grid.points[k],
        grid_size=len(grid),
    )


def pbj_statistic(X, grid: Grid, side: Union[Side, str]) -> BjScanResult:
    """Penalized Berk-Jones statistic of X over grid."""
    result = scan_contrasts(contrast_matrix(X, grid), side)
    logger.debug("pbj statistic=%.4f penalized=%.4f at t=%d", result.statistic,
                 result.penalized, result.argmax_t)
    return result
