"""Fixed-point maximum-likelihood estimation of the Yule-Simon shape.

Setting the derivative of the log likelihood
l(rho) = n log rho + sum_i log B(k_i, rho+1) to zero and applying the
digamma recurrence psi(k+rho+1) - psi(rho+1) = sum_{j=1}^{k} 1/(rho+j)
gives the score equation

    n / rho = sum_i sum_{j=1}^{k_i} 1/(rho + j),

whose solution is found by iterating rho <- n / (right-hand side).
When every count equals 1 the likelihood rho/(rho+1) per observation is
strictly increasing in rho, so no finite maximizer exists and the
iteration is refused up front.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma

from . import distribution
from .errors import (ConvergenceError, DataError, DivergenceError,
                     ParameterError)
from .gibbs import _check_positive

# Counts at or below this use direct summation of 1/(rho+j); larger
# counts use the digamma difference (word counts reach ~1e4, making
# per-term summation quadratic-ish in corpus size).
_DIRECT_SUM_MAX = 64


@dataclass(frozen=True)
class FixedPointConfig:
    tolerance: float = 1e-10
    max_iterations: int = 10_000
    initial_rho: float = 1.0

    def __post_init__(self):
        _check_positive("tolerance", self.tolerance)
        if not isinstance(self.max_iterations, int) or self.max_iterations < 1:
            raise ParameterError(f"max_iterations must be a positive integer, "
                                 f"got {self.max_iterations!r}")
        _check_positive("initial_rho", self.initial_rho)


@dataclass(frozen=True)
class FixedPointResult:
    rho_hat: float
    iterations: int


def log_likelihood(data, rho):
    """n log rho + sum_i log B(k_i, rho + 1)."""
    rho = _check_positive("rho", rho)
    counts = distribution.as_counts(data)
    if counts.size == 0:
        raise DataError("data must contain at least one count")
    lb = distribution.log_beta_fn(counts.astype(np.float64), rho + 1.0)
    return counts.size * math.log(rho) + float(np.sum(lb))


def _reciprocal_sum(counts, rho):
    """sum_i sum_{j=1}^{k_i} 1/(rho + j), split small/large counts."""
    small = counts[counts <= _DIRECT_SUM_MAX]
    total = 0.0
    if small.size:
        # how many observations have k_i >= j, for each j up to the cap
        occupancy = np.bincount(small, minlength=_DIRECT_SUM_MAX + 1)
        tail_counts = np.cumsum(occupancy[::-1])[::-1]
        j = np.arange(1, _DIRECT_SUM_MAX + 1, dtype=np.float64)
        total += float(np.sum(tail_counts[1:] / (rho + j)))
    large = counts[counts > _DIRECT_SUM_MAX]
    if large.size:
        total += float(np.sum(digamma(large + rho + 1.0)
                              - digamma(rho + 1.0)))
    return total


def score(data, rho):
    """Derivative of the log likelihood: n/rho - sum_i sum_j 1/(rho+j)."""
    rho = _check_positive("rho", rho)
    counts = distribution.as_counts(data)
    if counts.size == 0:
        raise DataError("data must contain at least one count")
    return counts.size / rho - _reciprocal_sum(counts, rho)


def fixed_point_fit(data, config=None):
    """Iterate rho <- n / sum_i sum_j 1/(rho+j) to the MLE.

    Returns a FixedPointResult with the estimate and the number of
    iterations used.  Raises DivergenceError when all counts are 1 (the
    likelihood increases without bound) and ConvergenceError when the
    iterate tolerance is not met within ``config.max_iterations``.
    """
    if config is None:
        config = FixedPointConfig()
    counts = distribution.as_counts(data)
    if counts.size == 0:
        raise DataError("data must contain at least one count")
    if np.all(counts == 1):
        raise DivergenceError(
            "all counts equal 1: the likelihood is strictly increasing in "
            "rho, so no finite maximum-likelihood estimate exists")
    n = counts.size
    rho = config.initial_rho
    for iteration in range(1, config.max_iterations + 1):
        rho_next = n / _reciprocal_sum(counts, rho)
        if abs(rho_next - rho) < config.tolerance:
            return FixedPointResult(rho_hat=float(rho_next),
                                    iterations=iteration)
        rho = rho_next
    raise ConvergenceError(
        f"fixed-point iteration did not reach tolerance "
        f"{config.tolerance} within {config.max_iterations} iterations",
        last_iterate=float(rho), iterations=config.max_iterations)
