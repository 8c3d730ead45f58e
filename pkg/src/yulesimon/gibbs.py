"""Data-augmentation Gibbs sampler for the i.i.d. Yule-Simon model.

Model: counts k_i ~ YuleSimon(rho) independently, prior rho ~ Gamma(a, b)
(rate parameterization).  Augmenting each observation with its latent
mixing variable makes both full conditionals standard:

    t_i | rho, k_i  ~  Beta(rho + 1, k_i),      w_i = -log t_i,
    rho | w, k      ~  Gamma(a + n, b + sum(w)).

One sweep redraws every w_i and then rho; the w vector is per-sweep
scratch and is not retained in the trace.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import distribution
from .backend import backend_name, kernels
from .errors import DataError, ParameterError
from .rng import RngState

_MAX_SEED = (1 << 64) - 1


def _check_positive(name, value):
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a number, got {value!r}") from None
    if not (math.isfinite(v) and v > 0.0):
        raise ParameterError(f"{name} must be positive and finite, got {value!r}")
    return v


@dataclass(frozen=True)
class GammaPrior:
    """Gamma(a, b) prior on rho; a is the shape, b the rate."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _check_positive("prior shape a", self.a))
        object.__setattr__(self, "b", _check_positive("prior rate b", self.b))

    @property
    def mean(self):
        return self.a / self.b


@dataclass(frozen=True)
class ChainConfig:
    """Run-length and seeding controls for a single chain."""

    iterations: int = 50_000
    burn_in: int = 10_000
    thinning: int = 1
    seed: int = 0
    initial_rho: float | None = None

    def __post_init__(self):
        if not isinstance(self.iterations, int) or self.iterations < 1:
            raise ParameterError(
                f"iterations must be a positive integer, got {self.iterations!r}")
        if not isinstance(self.burn_in, int) or self.burn_in < 0:
            raise ParameterError(
                f"burn_in must be a nonnegative integer, got {self.burn_in!r}")
        if self.burn_in >= self.iterations:
            raise ParameterError(
                f"burn_in ({self.burn_in}) must be smaller than iterations "
                f"({self.iterations})")
        if not isinstance(self.thinning, int) or self.thinning < 1:
            raise ParameterError(
                f"thinning must be a positive integer, got {self.thinning!r}")
        if (not isinstance(self.seed, int) or isinstance(self.seed, bool)
                or not 0 <= self.seed <= _MAX_SEED):
            raise ParameterError(f"seed must be an integer in [0, 2**64), "
                                 f"got {self.seed!r}")
        if self.initial_rho is not None:
            _check_positive("initial_rho", self.initial_rho)

    @property
    def n_retained(self):
        return (self.iterations - self.burn_in) // self.thinning


@dataclass(frozen=True)
class ChainTrace:
    """Retained post-burn-in states of one chain.

    ``states`` has one row per retained sweep and one column per
    parameter named in ``parameter_names``.
    """

    states: np.ndarray
    parameter_names: tuple
    config: object
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        states = np.asarray(self.states, dtype=np.float64)
        if states.ndim == 1:
            states = states.reshape(-1, 1)
        if states.ndim != 2:
            raise ParameterError("trace states must be 1- or 2-dimensional")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "parameter_names",
                           tuple(self.parameter_names))
        if states.shape[1] != len(self.parameter_names):
            raise ParameterError(
                f"{states.shape[1]} state columns but "
                f"{len(self.parameter_names)} parameter names")

    def __len__(self):
        return self.states.shape[0]

    def column(self, parameter):
        """Samples of one parameter, selected by name or position."""
        if isinstance(parameter, str):
            try:
                idx = self.parameter_names.index(parameter)
            except ValueError:
                raise ParameterError(
                    f"unknown parameter {parameter!r}; trace has "
                    f"{self.parameter_names}") from None
        else:
            idx = int(parameter)
            if not 0 <= idx < len(self.parameter_names):
                raise ParameterError(f"parameter index {idx} out of range")
        return self.states[:, idx]


@dataclass(frozen=True)
class PosteriorSummary:
    """Location and equal-tailed interval of a marginal posterior sample."""

    mean: float
    median: float
    credible_interval: tuple
    level: float
    n_retained: int

    @property
    def width(self):
        lo, hi = self.credible_interval
        return hi - lo

    def contains(self, value):
        lo, hi = self.credible_interval
        return lo <= value <= hi


def gibbs_step(state, current_rho, data, prior):
    """One augmentation sweep; returns (new_rho, w_sum).

    Draws t_i ~ Beta(current_rho + 1, k_i) for every observation, forms
    w_i = -log t_i, then draws the new rho from
    Gamma(a + n, rate = b + sum w).  Consumes two calls on ``state``.
    """
    current_rho = _check_positive("current_rho", current_rho)
    counts = distribution.as_counts(data)
    if counts.size == 0:
        raise DataError("data must contain at least one count")
    if not isinstance(prior, GammaPrior):
        prior = GammaPrior(*prior)
    call_w = state._next_call()
    call_r = state._next_call()
    new_rho, w_sum = kernels().iid_sweep(state._raw(), call_w, call_r,
                                         current_rho, counts,
                                         prior.a, prior.b)
    return float(new_rho), float(w_sum)


def run_chain(data, prior, config=None):
    """Run the full sampler and return the retained trace of rho.

    Starts at ``config.initial_rho`` (default: the prior mean a/b),
    iterates ``config.iterations`` sweeps, drops ``config.burn_in`` and
    keeps every ``config.thinning``-th state.  Deterministic given
    ``config.seed``; equals repeated ``gibbs_step`` calls on a fresh
    ``RngState(config.seed)``.
    """
    if config is None:
        config = ChainConfig()
    if not isinstance(prior, GammaPrior):
        prior = GammaPrior(*prior)
    counts = distribution.as_counts(data)
    if counts.size == 0:
        raise DataError("data must contain at least one count; with no "
                        "data the posterior is just the prior")
    rho0 = config.initial_rho if config.initial_rho is not None else prior.mean
    state = RngState(config.seed)
    full = kernels().iid_chain(state._raw(), np.uint64(0), counts,
                               prior.a, prior.b, config.iterations, rho0)
    retained = full[config.burn_in::config.thinning][:config.n_retained]
    if not np.all(retained > 0.0):
        raise RuntimeError("sampler produced a non-positive rho state")
    return ChainTrace(
        states=retained.copy().reshape(-1, 1),
        parameter_names=("rho",),
        config=config,
        metadata={"initial_rho": rho0, "seed": config.seed,
                  "backend": backend_name(),
                  "prior": {"a": prior.a, "b": prior.b}},
    )


def _extract_samples(trace_or_samples, parameter):
    if isinstance(trace_or_samples, ChainTrace):
        return trace_or_samples.column(parameter)
    arr = np.asarray(trace_or_samples, dtype=np.float64)
    if arr.ndim != 1:
        raise ParameterError("expected a ChainTrace or a 1-D sample array")
    return arr


def summarize(trace, level=0.95, parameter=0):
    """Mean, median and equal-tailed credible interval of one parameter.

    ``trace`` may be a ChainTrace (select a column via ``parameter``) or
    a plain 1-D array of samples.  The interval takes the empirical
    (1-level)/2 and 1-(1-level)/2 quantiles.
    """
    if not 0.0 < level < 1.0:
        raise ParameterError(f"level must be in (0, 1), got {level!r}")
    samples = _extract_samples(trace, parameter)
    if samples.size == 0:
        raise DataError("cannot summarize an empty trace")
    tail = (1.0 - level) / 2.0
    lo, hi = np.quantile(samples, [tail, 1.0 - tail])
    return PosteriorSummary(
        mean=float(np.mean(samples)),
        median=float(np.median(samples)),
        credible_interval=(float(lo), float(hi)),
        level=level,
        n_retained=int(samples.size),
    )


@dataclass(frozen=True)
class StudyRow:
    """Replicate-averaged results for one (rho_true, n) scenario."""

    rho_true: float
    n: int
    avg_mean: float
    avg_median: float
    mse_mean: float
    mse_median: float
    summaries: tuple
    data_seeds: tuple

    @property
    def replicates(self):
        return len(self.summaries)


def replicate_study(rho_true, n, prior, config, replicates=20, level=0.95):
    """Repeat simulate-data/run-chain/summarize and average the results.

    Each replicate gets a fresh dataset of size ``n`` drawn from the
    distribution at ``rho_true`` and its own chain seed, both derived
    from ``config.seed``.  MSE columns average the squared deviation of
    each replicate's posterior mean (or median) from ``rho_true``.
    """
    rho_true = _check_positive("rho_true", rho_true)
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if not isinstance(replicates, int) or replicates < 2:
        raise ParameterError(
            f"replicates must be an integer >= 2, got {replicates!r}")
    master = RngState(config.seed)
    summaries = []
    data_seeds = []
    for r in range(replicates):
        data_seed = master.child_seed(2 * r)
        chain_seed = master.child_seed(2 * r + 1)
        data = distribution.sample(RngState(data_seed), rho_true, size=n)
        trace = run_chain(data, prior, replace(config, seed=chain_seed))
        summaries.append(summarize(trace, level=level))
        data_seeds.append(data_seed)
    means = np.array([s.mean for s in summaries])
    medians = np.array([s.median for s in summaries])
    return StudyRow(
        rho_true=rho_true,
        n=n,
        avg_mean=float(means.mean()),
        avg_median=float(medians.mean()),
        mse_mean=float(np.mean((means - rho_true) ** 2)),
        mse_median=float(np.mean((medians - rho_true) ** 2)),
        summaries=tuple(summaries),
        data_seeds=tuple(data_seeds),
    )
