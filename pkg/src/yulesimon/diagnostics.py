"""MCMC convergence diagnostics: Gelman-Rubin, Geweke, progressive means.

All functions take plain arrays of post-burn-in samples; nothing here
depends on how the chains were produced.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegenerateChainError, ParameterError


def _as_chain_matrix(chains):
    rows = [np.asarray(c, dtype=np.float64).ravel() for c in chains]
    if len(rows) < 2:
        raise ParameterError("need at least 2 chains")
    length = rows[0].size
    if any(r.size != length for r in rows):
        raise ParameterError("all chains must have equal length")
    if length < 2:
        raise ParameterError("chains must contain at least 2 samples")
    return np.vstack(rows)


def gelman_rubin(chains):
    """Potential scale reduction factor over >= 2 equal-length chains.

    With m chains of length L: B = L * var(chain means),
    W = mean(within-chain variances), Vhat = ((L-1)/L) W + B/L, and the
    statistic is sqrt(Vhat/W), floored at 1.  Values near 1 indicate the
    chains are sampling the same distribution.
    """
    x = _as_chain_matrix(chains)
    length = x.shape[1]
    within = x.var(axis=1, ddof=1)
    w = float(within.mean())
    if w == 0.0:
        raise DegenerateChainError("within-chain variance is zero")
    b = length * float(x.mean(axis=1).var(ddof=1))
    vhat = (length - 1) / length * w + b / length
    return max(math.sqrt(vhat / w), 1.0)


def _segment_variance(segment, spectral):
    n = segment.size
    if spectral:
        # batch-means estimate of the spectral density at zero, as a
        # proxy robust to autocorrelation
        n_batches = math.isqrt(n)
        batch = n // n_batches
        used = segment[:n_batches * batch].reshape(n_batches, batch)
        bm_var = float(used.mean(axis=1).var(ddof=1))
        if bm_var == 0.0:
            raise DegenerateChainError("segment has zero batch-mean variance")
        return bm_var / n_batches
    var = float(segment.var(ddof=1))
    if var == 0.0:
        raise DegenerateChainError("segment has zero variance")
    return var / n


def geweke(trace, frac_first=0.1, frac_last=0.5, spectral=True):
    """Z-score comparing the means of an early and a late trace segment.

    Splits off the first ``frac_first`` and last ``frac_last`` of the
    trace (the segments must not overlap, each at least 10 samples) and
    standardizes the mean difference.  Segment variances use a
    batch-means spectral proxy by default; ``spectral=False`` uses the
    raw sample variance, which makes the statistic an exact
    antisymmetric function under trace reversal.
    """
    x = np.asarray(trace, dtype=np.float64).ravel()
    if not (0.0 < frac_first < 1.0 and 0.0 < frac_last < 1.0):
        raise ParameterError("segment fractions must be in (0, 1)")
    if frac_first + frac_last > 1.0:
        raise ParameterError(
            f"segments overlap: {frac_first} + {frac_last} > 1")
    n1 = int(frac_first * x.size)
    n2 = int(frac_last * x.size)
    if n1 < 10 or n2 < 10:
        raise ParameterError(f"segments too short ({n1} and {n2} samples); "
                             "each needs at least 10")
    first = x[:n1]
    last = x[x.size - n2:]
    v1 = _segment_variance(first, spectral)
    v2 = _segment_variance(last, spectral)
    return float((first.mean() - last.mean()) / math.sqrt(v1 + v2))


def progressive_mean(trace):
    """Running mean: element t is the mean of the first t+1 samples."""
    x = np.asarray(trace, dtype=np.float64).ravel()
    if x.size == 0:
        raise DataError("trace is empty")
    return np.cumsum(x) / np.arange(1, x.size + 1)


def rhat_by_prefix(chains, points=20):
    """Gelman-Rubin statistic over growing chain prefixes.

    Returns (lengths, rhats) for ~``points`` prefix lengths up to the
    full chain length; the tabular stand-in for a convergence plot.
    """
    x = _as_chain_matrix(chains)
    length = x.shape[1]
    if not isinstance(points, int) or points < 1:
        raise ParameterError(f"points must be a positive integer, got "
                             f"{points!r}")
    lengths = np.unique(np.linspace(max(2, length // points), length,
                                    min(points, length - 1), dtype=np.int64))
    rhats = np.array([gelman_rubin(x[:, :t]) for t in lengths])
    return lengths, rhats


@dataclass(frozen=True)
class DiagnosticsReport:
    """Per-parameter convergence summary over one or more chains."""

    parameter: str
    n_chains: int
    chain_length: int
    rhat: float | None
    geweke_z: tuple

    def to_dict(self):
        return {
            "parameter": self.parameter,
            "n_chains": self.n_chains,
            "chain_length": self.chain_length,
            "rhat": self.rhat,
            "geweke_z": list(self.geweke_z),
        }


def build_report(chains, parameter="rho", frac_first=0.1, frac_last=0.5,
                 spectral=True):
    """Bundle R-hat (when >= 2 chains) and per-chain Geweke z-scores."""
    rows = [np.asarray(c, dtype=np.float64).ravel() for c in chains]
    if not rows:
        raise ParameterError("need at least one chain")
    rhat = gelman_rubin(rows) if len(rows) >= 2 else None
    zs = tuple(geweke(r, frac_first, frac_last, spectral) for r in rows)
    return DiagnosticsReport(
        parameter=parameter,
        n_chains=len(rows),
        chain_length=rows[0].size,
        rhat=rhat,
        geweke_z=zs,
    )
