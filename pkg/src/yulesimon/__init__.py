"""Bayesian and maximum-likelihood inference for the Yule-Simon distribution.

Exposes the distribution itself (pmf/ccdf/sampling), a data-augmentation
Gibbs sampler for i.i.d. counts, a Metropolis-within-Gibbs count
regression with a log link, a fixed-point maximum-likelihood comparator,
convergence diagnostics, and a word-frequency pipeline for text corpora.
Heavy loops run on numba-compiled kernels with a pure-numpy fallback
(see ``yulesimon.backend``).
"""

__version__ = "0.1.0"

from .backend import backend_name, set_backend
from .diagnostics import (DiagnosticsReport, build_report, gelman_rubin,
                          geweke, progressive_mean, rhat_by_prefix)
from .distribution import ccdf, log_beta_fn, log_pmf, pmf, sample
from .errors import (ConvergenceError, DataError, DegenerateChainError,
                     DivergenceError, EncodingError, ParameterError,
                     YuleSimonError)
from .gibbs import (ChainConfig, ChainTrace, GammaPrior, PosteriorSummary,
                    gibbs_step, replicate_study, run_chain, summarize)
from .mle import (FixedPointConfig, FixedPointResult, fixed_point_fit,
                  log_likelihood, score)
from .regression import (RegressionConfig, RegressionDesign, link,
                         log_beta_conditional, mwg_step, run_regression,
                         simulate_regression_data)
from .rng import RngState

__all__ = [
    "ChainConfig", "ChainTrace", "ConvergenceError", "DataError",
    "DegenerateChainError", "DiagnosticsReport", "DivergenceError",
    "EncodingError", "FixedPointConfig", "FixedPointResult", "GammaPrior",
    "ParameterError", "PosteriorSummary", "RegressionConfig",
    "RegressionDesign", "RngState", "YuleSimonError", "__version__",
    "backend_name", "build_report", "ccdf", "fixed_point_fit",
    "gelman_rubin", "geweke", "gibbs_step", "link", "log_beta_conditional",
    "log_beta_fn", "log_likelihood", "log_pmf", "mwg_step", "pmf",
    "progressive_mean", "replicate_study", "rhat_by_prefix", "run_chain",
    "run_regression", "sample", "score", "set_backend",
    "simulate_regression_data", "summarize",
]
