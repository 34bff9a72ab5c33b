"""
Standard normal tail functions and Bernoulli divergences.

All functions accept scalars or numpy arrays and return the same shape
(plain float for scalar input).
"""

import numpy as np
from scipy import special

from ..errors import InputError


def _as_array(value) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if np.isnan(arr).any():
        raise InputError("non-finite input")
    return arr


def _as_output(arr: np.ndarray):
    if arr.ndim == 0:
        return float(arr)
    return arr


def std_normal_sf(x):
    """Φ̄(x) = 1 − Φ(x), evaluated without cancellation in the upper tail."""
    return _as_output(special.ndtr(-_as_array(x)))


def std_normal_log_sf(x):
    """log Φ̄(x); stays finite far beyond the range where Φ̄ underflows."""
    return _as_output(special.log_ndtr(-_as_array(x)))


def std_normal_quantile_sf(q):
    """
    Φ̄⁻¹(q): the point whose upper tail probability is q.

    Args:
        q: 확률 (0, 1) 구간. 0 또는 1 은 무한대이므로 거부한다.

    Returns:
        x such that std_normal_sf(x) == q (round-trip error ≤ 1e-10).
    """
    arr = _as_array(q)
    if ((arr < 0.0) | (arr > 1.0)).any():
        raise InputError("probability outside [0, 1]")
    if ((arr == 0.0) | (arr == 1.0)).any():
        raise InputError("quantile at boundary")
    return _as_output(-special.ndtri(arr))


def bern_kl_terms(x, t) -> np.ndarray:
    """
    K(x, t) without argument validation, for hot loops.

    t must already lie strictly inside (0, 1); x in [0, 1] uses 0·log 0 = 0.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    head = special.xlogy(x, x) - special.xlogy(x, t)
    tail = special.xlogy(1.0 - x, 1.0 - x) - (1.0 - x) * np.log1p(-t)
    return np.maximum(head + tail, 0.0)


def bern_kl(x, t):
    """
    Bernoulli Kullback-Leibler divergence K(x, t) in nats.

    K(x, t) = x log(x/t) + (1−x) log((1−x)/(1−t)), with the 0·log 0 = 0
    convention at x ∈ {0, 1} so that K(0, t) = −log(1−t), K(1, t) = −log t.
    """
    x_arr = _as_array(x)
    t_arr = _as_array(t)
    if ((x_arr < 0.0) | (x_arr > 1.0)).any():
        raise InputError("probability outside [0, 1]")
    if ((t_arr <= 0.0) | (t_arr >= 1.0)).any():
        raise InputError("degenerate reference")
    return _as_output(bern_kl_terms(x_arr, t_arr))


def bern_hellinger_sq(x, t):
    """(√x − √t)² + (√(1−x) − √(1−t))², a lower bound for bern_kl."""
    x_arr = _as_array(x)
    t_arr = _as_array(t)
    if ((x_arr < 0.0) | (x_arr > 1.0) | (t_arr < 0.0) | (t_arr > 1.0)).any():
        raise InputError("probability outside [0, 1]")
    value = (np.sqrt(x_arr) - np.sqrt(t_arr)) ** 2 + (np.sqrt(1.0 - x_arr) - np.sqrt(1.0 - t_arr)) ** 2
    return _as_output(value)
