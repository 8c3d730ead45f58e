"""Gibbs sampler: exact sweep semantics, quadrature ground truth on a
tiny instance, and the replicate-study harness."""

import numpy as np
import pytest
from scipy import integrate, stats

import yulesimon as ys
from yulesimon import distribution
from yulesimon.errors import DataError, ParameterError
from yulesimon.gibbs import (ChainConfig, GammaPrior, gibbs_step,
                             replicate_study, run_chain, summarize)
from yulesimon.rng import RngState

from conftest import batch_means_se

PRIOR = GammaPrior(a=0.25, b=0.05)


def test_prior_validation_and_mean():
    assert GammaPrior(2.0, 0.5).mean == 4.0
    for bad in ((0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (np.nan, 1.0)):
        with pytest.raises(ParameterError):
            GammaPrior(*bad)


def test_chain_config_validation():
    cfg = ChainConfig(iterations=100, burn_in=20, thinning=4, seed=1)
    assert cfg.n_retained == 20
    with pytest.raises(ParameterError):
        ChainConfig(iterations=0)
    with pytest.raises(ParameterError):
        ChainConfig(iterations=10, burn_in=10)
    with pytest.raises(ParameterError):
        ChainConfig(iterations=10, burn_in=2, thinning=0)
    with pytest.raises(ParameterError):
        ChainConfig(initial_rho=-1.0)


def test_chain_equals_repeated_steps():
    """run_chain is bit-identical to driving gibbs_step by hand."""
    data = distribution.as_counts([3, 1, 4, 1, 5, 9, 2, 6])
    cfg = ChainConfig(iterations=50, burn_in=0, seed=314)
    trace = run_chain(data, PRIOR, cfg)

    state = RngState(314)
    rho = PRIOR.mean
    manual = []
    for _ in range(50):
        rho, w_sum = gibbs_step(state, rho, data, PRIOR)
        assert w_sum > 0.0
        manual.append(rho)
    assert np.array_equal(trace.column("rho"), np.array(manual))


def test_burn_in_and_thinning_slice_the_same_chain():
    data = distribution.sample(RngState(8), 2.0, size=40)
    full = run_chain(data, PRIOR, ChainConfig(iterations=200, burn_in=0,
                                              seed=99))
    thinned = run_chain(data, PRIOR, ChainConfig(iterations=200, burn_in=60,
                                                 thinning=7, seed=99))
    expect = full.column("rho")[60::7][: thinned.config.n_retained]
    assert np.array_equal(thinned.column("rho"), expect)


def test_sweep_distribution_against_independent_sampler():
    """One sweep from a fixed point must match the two-block conditional
    composition sampled with scipy primitives."""
    data = distribution.as_counts([2, 5, 1])
    rho0, reps = 3.0, 20_000
    ours = np.array([
        gibbs_step(RngState(1000 + i), rho0, data, PRIOR)[0]
        for i in range(reps)
    ])

    ref_rng = np.random.default_rng(5)
    t = stats.beta(rho0 + 1.0, data).rvs((reps, data.size),
                                         random_state=ref_rng)
    w_sum = -np.log(t).sum(axis=1)
    ref = ref_rng.gamma(PRIOR.a + data.size, 1.0 / (PRIOR.b + w_sum))

    assert abs(ours.mean() - ref.mean()) < 4.0 * np.hypot(
        ours.std() / np.sqrt(reps), ref.std() / np.sqrt(reps))
    assert stats.ks_2samp(ours, ref).pvalue > 1e-3


def test_posterior_mean_matches_quadrature_oracle():
    """n=1, k=2: posterior mean within 3 Monte Carlo SEs of quadrature."""
    a, b = PRIOR.a, PRIOR.b

    def post(r):
        return r ** (a - 1.0) * np.exp(-b * r) * r / ((r + 1.0) * (r + 2.0))

    z, _ = integrate.quad(post, 0.0, np.inf, limit=200)
    m1, _ = integrate.quad(lambda r: r * post(r), 0.0, np.inf, limit=200)
    oracle = m1 / z

    trace = run_chain(np.array([2]), PRIOR,
                      ChainConfig(iterations=60_000, burn_in=10_000,
                                  seed=123))
    x = trace.column("rho")
    assert abs(x.mean() - oracle) < 3.0 * batch_means_se(x)


def test_posterior_concentrates_with_more_data():
    rho_true = 5.0
    cfg = dict(iterations=6_000, burn_in=1_000)
    small = run_chain(distribution.sample(RngState(41), rho_true, size=30),
                      PRIOR, ChainConfig(seed=42, **cfg))
    large = run_chain(distribution.sample(RngState(43), rho_true, size=500),
                      PRIOR, ChainConfig(seed=44, **cfg))
    assert summarize(large).width < summarize(small).width
    assert abs(summarize(large).mean - rho_true) < 1.5


def test_chain_positive_and_deterministic():
    data = distribution.sample(RngState(4), 0.8, size=60)
    cfg = ChainConfig(iterations=400, burn_in=100, seed=7)
    t1 = run_chain(data, PRIOR, cfg)
    t2 = run_chain(data, PRIOR, cfg)
    assert np.array_equal(t1.states, t2.states)
    assert np.all(t1.states > 0.0)
    assert t1.parameter_names == ("rho",)
    assert len(t1) == cfg.n_retained
    assert t1.metadata["backend"] in ("numba", "numpy")


def test_trace_column_lookup():
    data = np.array([2, 3])
    trace = run_chain(data, PRIOR, ChainConfig(iterations=20, burn_in=0,
                                               seed=0))
    assert np.array_equal(trace.column("rho"), trace.column(0))
    with pytest.raises(ParameterError):
        trace.column("beta9")


def test_summarize_on_known_array():
    x = np.arange(1.0, 101.0)
    s = summarize(x, level=0.9)
    assert s.mean == pytest.approx(50.5)
    assert s.median == pytest.approx(50.5)
    lo, hi = np.quantile(x, [0.05, 0.95])
    assert s.credible_interval == pytest.approx((lo, hi))
    assert s.width == pytest.approx(hi - lo)
    assert s.contains(50.0) and not s.contains(hi + 1.0)
    assert s.n_retained == 100


def test_empty_data_rejected():
    with pytest.raises(DataError):
        run_chain(np.array([]), PRIOR,
                  ChainConfig(iterations=10, burn_in=2))


def test_replicate_study_shapes_and_determinism():
    cfg = ChainConfig(iterations=300, burn_in=50, seed=0)
    row1 = replicate_study(2.0, 25, PRIOR, cfg, replicates=3)
    row2 = replicate_study(2.0, 25, PRIOR, cfg, replicates=3)
    assert row1.rho_true == 2.0 and row1.n == 25
    assert len(row1.summaries) == 3 and len(row1.data_seeds) == 3
    assert row1.avg_mean == pytest.approx(
        np.mean([s.mean for s in row1.summaries]))
    assert row1.mse_mean == pytest.approx(
        np.mean([(s.mean - 2.0) ** 2 for s in row1.summaries]))
    assert row1.avg_mean == row2.avg_mean
    assert row1.data_seeds == row2.data_seeds
    # fresh data each replicate: the simulated sets differ
    d0 = distribution.sample(RngState(row1.data_seeds[0]), 2.0, size=25)
    d1 = distribution.sample(RngState(row1.data_seeds[1]), 2.0, size=25)
    assert not np.array_equal(d0, d1)


def test_replicate_study_recovers_truth_roughly():
    cfg = ChainConfig(iterations=2_000, burn_in=400, seed=10)
    row = replicate_study(0.8, 200, PRIOR, cfg, replicates=4)
    assert abs(row.avg_mean - 0.8) < 0.15
