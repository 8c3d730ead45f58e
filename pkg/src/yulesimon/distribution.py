"""Yule-Simon distribution: exact evaluation and simulation.

The distribution has mass f(k; rho) = rho * B(k, rho + 1) on k = 1, 2, ...
for shape rho > 0, where B is the beta function.  It arises as the
marginal of a two-stage draw: W ~ Exponential(rho), then K geometric with
success probability 1 - e^{-W}.  All beta-function work happens in log
space because observed counts reach 10^4-10^5 in word-frequency data.
"""

import math

import numpy as np
from scipy.special import gammaln

from .backend import kernels
from .errors import DataError, ParameterError


def _check_rho(rho):
    try:
        rho = float(rho)
    except (TypeError, ValueError):
        raise ParameterError(f"rho must be a number, got {rho!r}") from None
    if not (math.isfinite(rho) and rho > 0.0):
        raise ParameterError(f"rho must be positive and finite, got {rho}")
    return rho


def _check_k(k):
    arr = np.asarray(k)
    if arr.dtype == bool or not np.issubdtype(arr.dtype, np.number):
        raise ParameterError(f"k must be integer-valued, got dtype {arr.dtype}")
    if not np.all(np.isfinite(arr.astype(np.float64))):
        raise ParameterError("k must be finite")
    if np.any(arr != np.floor(arr)):
        raise ParameterError("k must be integer-valued")
    if np.any(arr < 1):
        raise ParameterError("k must be >= 1")
    out = arr.astype(np.int64)
    return (out, True) if np.ndim(k) else (out, False)


def as_counts(data):
    """Validate observed counts and return them as a 1-D int64 array.

    Counts must be integer-valued and >= 1 (the distribution's support).
    Raises DataError otherwise; an empty array passes through so callers
    can give their own emptiness message.
    """
    arr = np.atleast_1d(np.asarray(data))
    if arr.ndim != 1:
        raise DataError(f"counts must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        return np.empty(0, dtype=np.int64)
    if arr.dtype == bool or not np.issubdtype(arr.dtype, np.number):
        raise DataError(f"counts must be integers, got dtype {arr.dtype}")
    fl = arr.astype(np.float64)
    if not np.all(np.isfinite(fl)):
        raise DataError("counts must be finite")
    if np.any(arr != np.floor(arr)):
        bad = int(np.argmax(arr != np.floor(arr)))
        raise DataError(f"counts must be integers; entry {bad} is {arr[bad]!r}")
    if np.any(arr < 1):
        bad = int(np.argmax(arr < 1))
        raise DataError(f"counts must be >= 1; entry {bad} is {arr[bad]!r}")
    return np.ascontiguousarray(arr, dtype=np.int64)


def log_beta_fn(a, b):
    """log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a+b).

    Accepts scalars or arrays (elementwise); arguments must be positive.
    """
    a_arr = np.asarray(a, dtype=np.float64)
    b_arr = np.asarray(b, dtype=np.float64)
    if np.any(a_arr <= 0.0) or np.any(b_arr <= 0.0):
        raise ParameterError("log_beta_fn arguments must be positive")
    out = gammaln(a_arr) + gammaln(b_arr) - gammaln(a_arr + b_arr)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(out)
    return out


def log_pmf(k, rho):
    """log f(k; rho) = log rho + log B(k, rho + 1); k scalar or array."""
    rho = _check_rho(rho)
    karr, is_arr = _check_k(k)
    out = math.log(rho) + log_beta_fn(karr.astype(np.float64), rho + 1.0)
    return out if is_arr else float(out)


def pmf(k, rho):
    """Probability mass f(k; rho); strictly decreasing in k."""
    out = np.exp(log_pmf(k, rho))
    return out if np.ndim(k) else float(out)


def ccdf(k, rho):
    """Upper tail P(K > k) = k * B(k, rho + 1).

    The closed form follows from telescoping the mass function:
    k B(k, rho+1) - (k+1) B(k+1, rho+1) = rho B(k+1, rho+1) = f(k+1).
    """
    rho = _check_rho(rho)
    karr, is_arr = _check_k(k)
    kf = karr.astype(np.float64)
    out = np.exp(np.log(kf) + log_beta_fn(kf, rho + 1.0))
    return out if is_arr else float(out)


def sample(state, rho, size=None):
    """Draw from the distribution via its exponential-geometric mixture.

    Each draw takes W ~ Exponential(rho) and then a geometric count with
    success probability 1 - e^{-W}.  Consumes one call on ``state``.
    """
    rho = _check_rho(rho)
    n = 1 if size is None else int(size)
    if n < 0:
        raise ParameterError(f"size must be nonnegative, got {size!r}")
    rho_arr = np.full(n, rho, dtype=np.float64)
    out = kernels().yule_draws(state._raw(), state._next_call(), rho_arr)
    if size is None:
        return int(out[0])
    return out


def sample_with_rates(state, rho_values):
    """Draw one count per element of ``rho_values`` (all must be > 0)."""
    rho_arr = np.ascontiguousarray(rho_values, dtype=np.float64)
    if rho_arr.ndim != 1:
        raise ParameterError("rho_values must be one-dimensional")
    if not np.all(np.isfinite(rho_arr)) or np.any(rho_arr <= 0.0):
        raise ParameterError("all rho values must be positive and finite")
    return kernels().yule_draws(state._raw(), state._next_call(), rho_arr)
