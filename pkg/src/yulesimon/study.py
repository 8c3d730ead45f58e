"""Simulation-study and corpus-study harness.

Three table builders mirror the package's headline experiments:

* table 1 -- i.i.d. model, rho in {0.80, 5.00} x n in {30, 100, 500},
  replicate-averaged posterior mean/median, their MSEs against the true
  rho, and the fixed-point MLE on one representative replicate;
* table 2 -- regression model, two coefficient pairs x the same n grid,
  per-coefficient averages, MSE, interval bounds and coverage;
* table 3 -- per-novel word-frequency fits with three pooled chains,
  convergence diagnostics, and the fixed-point comparator.

Everything derives from one master seed, so rebuilding a table with the
same inputs reproduces the output files byte for byte.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, corpus, distribution, fileio, mle
from .backend import backend_name
from .diagnostics import gelman_rubin, geweke
from .errors import ParameterError, YuleSimonError
from .gibbs import (ChainConfig, GammaPrior, replicate_study, run_chain,
                    summarize)
from .regression import (RegressionConfig, run_regression,
                         simulate_regression_data)
from .rng import RngState

DEFAULT_PRIOR = GammaPrior(a=0.25, b=0.05)

# Table 3 protocol: three chains, 10k sweeps, 1k burn-in each.
TABLE3_CHAINS = 3
TABLE3_ITERATIONS = 10_000
TABLE3_BURN_IN = 1_000

QUICK_FACTOR = 10
QUICK_REPLICATES = 5


@dataclass(frozen=True)
class Scenario:
    """One simulation cell: which model, the true parameters, and n."""

    model: str
    true_params: tuple
    n: int

    def __post_init__(self):
        if self.model not in ("iid", "regression"):
            raise ParameterError(f"model must be 'iid' or 'regression', "
                                 f"got {self.model!r}")
        object.__setattr__(self, "true_params",
                           tuple(float(v) for v in self.true_params))
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got "
                                 f"{self.n!r}")


@dataclass(frozen=True)
class ExperimentSpec:
    """A reproducible batch of scenarios sharing prior, run lengths and seed."""

    scenarios: tuple
    prior: GammaPrior = DEFAULT_PRIOR
    iterations: int = 50_000
    burn_in: int = 10_000
    replicates: int = 20
    master_seed: int = 0
    proposal_scale: float = 0.1
    level: float = 0.95
    quick: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        if not self.scenarios:
            raise ParameterError("spec needs at least one scenario")

    def scenario_seed(self, index):
        return RngState(self.master_seed).child_seed(index)

    def config_dict(self):
        return {
            "scenarios": [{"model": s.model, "true_params": list(s.true_params),
                           "n": s.n} for s in self.scenarios],
            "prior": {"a": self.prior.a, "b": self.prior.b},
            "iterations": self.iterations,
            "burn_in": self.burn_in,
            "replicates": self.replicates,
            "master_seed": self.master_seed,
            "proposal_scale": self.proposal_scale,
            "level": self.level,
            "quick": self.quick,
            "backend": backend_name(),
            "version": __version__,
        }


def _scaled(iterations, burn_in, replicates, quick):
    if not quick:
        return iterations, burn_in, replicates
    return (max(1, iterations // QUICK_FACTOR),
            max(0, burn_in // QUICK_FACTOR),
            min(replicates, QUICK_REPLICATES))


def table1_spec(seed=0, quick=False):
    iterations, burn_in, replicates = _scaled(50_000, 10_000, 20, quick)
    scenarios = tuple(Scenario("iid", (rho,), n)
                      for rho in (0.80, 5.00) for n in (30, 100, 500))
    return ExperimentSpec(scenarios=scenarios, iterations=iterations,
                          burn_in=burn_in, replicates=replicates,
                          master_seed=seed, quick=quick)


def table2_spec(seed=0, quick=False):
    iterations, burn_in, replicates = _scaled(50_000, 10_000, 20, quick)
    scenarios = tuple(Scenario("regression", beta, n)
                      for beta in ((-0.5, 5.0), (1.5, -1.0))
                      for n in (30, 100, 500))
    return ExperimentSpec(scenarios=scenarios, iterations=iterations,
                          burn_in=burn_in, replicates=replicates,
                          master_seed=seed, quick=quick)


@dataclass
class TableResult:
    """Rows ready for CSV plus the raw per-scenario objects for reuse."""

    columns: tuple
    rows: list
    config: dict
    details: dict = field(default_factory=dict)

    def write_csv(self, path):
        fileio.write_csv(path, self.columns,
                         [[row.get(c) for c in self.columns]
                          for row in self.rows])

    def to_json_obj(self):
        return {"config": self.config, "columns": list(self.columns),
                "rows": self.rows}

    def write_json(self, path):
        fileio.write_json(path, self.to_json_obj())


def spread_initials(center, n_chains):
    """Overdispersed chain starts: center scaled by powers of 10.

    Three chains at center c start from c/10, c, 10c; a lone chain
    starts at the center.  Keeps multi-chain diagnostics honest.
    """
    if n_chains == 1:
        return [float(center)]
    offset = (n_chains - 1) / 2.0
    return [float(center) * 10.0 ** (c - offset) for c in range(n_chains)]


def run_table1(spec):
    """Replicate-averaged i.i.d. fits for every scenario in ``spec``."""
    columns = ("rho_true", "n", "mean", "median", "mse_mean", "mse_median",
               "fixed_point", "error")
    rows, details = [], {}
    for idx, sc in enumerate(spec.scenarios):
        rho_true = sc.true_params[0]
        row = {"rho_true": rho_true, "n": sc.n, "error": None}
        try:
            cfg = ChainConfig(iterations=spec.iterations,
                              burn_in=spec.burn_in,
                              seed=spec.scenario_seed(idx))
            study = replicate_study(rho_true, sc.n, spec.prior, cfg,
                                    replicates=spec.replicates,
                                    level=spec.level)
            rep_data = distribution.sample(RngState(study.data_seeds[0]),
                                           rho_true, size=sc.n)
            fp = mle.fixed_point_fit(rep_data)
            row.update(mean=study.avg_mean, median=study.avg_median,
                       mse_mean=study.mse_mean, mse_median=study.mse_median,
                       fixed_point=fp.rho_hat)
            details[(rho_true, sc.n)] = study
        except YuleSimonError as exc:
            row["error"] = str(exc)
        rows.append(row)
    return TableResult(columns=columns, rows=rows,
                       config=spec.config_dict(), details=details)


def run_table2(spec):
    """Replicate-averaged regression fits, one row per coefficient."""
    columns = ("n", "coefficient", "true_value", "mean", "median",
               "mse_mean", "ci_lower", "ci_upper", "coverage", "error")
    rows, details = [], {}
    for idx, sc in enumerate(spec.scenarios):
        beta_true = np.asarray(sc.true_params)
        p = beta_true.size
        try:
            master = RngState(spec.scenario_seed(idx))
            rep_summaries = [[] for _ in range(p)]
            acceptance = []
            for r in range(spec.replicates):
                data_state = RngState(master.child_seed(2 * r))
                design = simulate_regression_data(data_state, beta_true, sc.n)
                cfg = RegressionConfig(iterations=spec.iterations,
                                       burn_in=spec.burn_in,
                                       seed=master.child_seed(2 * r + 1),
                                       proposal_scale=spec.proposal_scale)
                trace = run_regression(design, cfg)
                acceptance.append(trace.metadata["acceptance_rate"])
                for j in range(p):
                    rep_summaries[j].append(
                        summarize(trace, level=spec.level, parameter=j))
            for j in range(p):
                summ = rep_summaries[j]
                means = np.array([s.mean for s in summ])
                medians = np.array([s.median for s in summ])
                los = np.array([s.credible_interval[0] for s in summ])
                his = np.array([s.credible_interval[1] for s in summ])
                covered = np.mean([s.contains(beta_true[j]) for s in summ])
                rows.append({
                    "n": sc.n, "coefficient": f"beta{j}",
                    "true_value": float(beta_true[j]),
                    "mean": float(means.mean()),
                    "median": float(medians.mean()),
                    "mse_mean": float(np.mean((means - beta_true[j]) ** 2)),
                    "ci_lower": float(los.mean()),
                    "ci_upper": float(his.mean()),
                    "coverage": float(covered),
                    "error": None,
                })
            details[(sc.true_params, sc.n)] = {
                "summaries": rep_summaries,
                "acceptance": acceptance,
            }
        except YuleSimonError as exc:
            for j in range(p):
                rows.append({"n": sc.n, "coefficient": f"beta{j}",
                             "true_value": float(beta_true[j]),
                             "error": str(exc)})
    return TableResult(columns=columns, rows=rows,
                       config=spec.config_dict(), details=details)


def run_multichain(counts, prior, iterations, burn_in, n_chains, seed,
                   level=0.95, initial_rho=None, thinning=1):
    """Fit one dataset with several chains; pool samples for the summary.

    Chain starts are spread around ``initial_rho`` (default: the prior
    mean) by factors of 10 so the between-chain diagnostic has work to
    do.  Returns (summary, rhat, geweke_z list, traces).
    """
    counts = distribution.as_counts(counts)
    center = prior.mean if initial_rho is None else initial_rho
    master = RngState(seed)
    traces = []
    for c, start in enumerate(spread_initials(center, n_chains)):
        cfg = ChainConfig(iterations=iterations, burn_in=burn_in,
                          thinning=thinning, seed=master.child_seed(c),
                          initial_rho=start)
        traces.append(run_chain(counts, prior, cfg))
    samples = [t.column("rho") for t in traces]
    pooled = np.concatenate(samples)
    summary = summarize(pooled, level=level)
    rhat = gelman_rubin(samples) if n_chains >= 2 else None
    zs = [geweke(s) for s in samples]
    return summary, rhat, zs, traces


def run_table3(paths, prior=DEFAULT_PRIOR, seed=0, quick=False,
               case_folding=True, strip_boilerplate=True, level=0.95):
    """Word-frequency fits for each text file, one row per novel."""
    iterations, burn_in, _ = _scaled(TABLE3_ITERATIONS, TABLE3_BURN_IN, 0,
                                     quick)
    columns = ("novel", "n", "total_tokens", "mean", "median", "ci_lower",
               "ci_upper", "rhat", "geweke_z", "fixed_point", "error")
    config = {
        "paths": [str(p) for p in paths],
        "prior": {"a": prior.a, "b": prior.b},
        "chains": TABLE3_CHAINS,
        "iterations": iterations,
        "burn_in": burn_in,
        "master_seed": seed,
        "case_folding": case_folding,
        "strip_boilerplate": strip_boilerplate,
        "level": level,
        "quick": quick,
        "backend": backend_name(),
        "version": __version__,
    }
    master = RngState(seed)
    rows, details = [], {}
    rules = corpus.TokenizerRules(case_folding=case_folding)
    for idx, path in enumerate(paths):
        name = Path(path).stem
        row = {"novel": name, "error": None}
        try:
            freq, markers = corpus.frequencies_from_file(
                path, rules, strip_boilerplate=strip_boilerplate)
            counts = distribution.as_counts(freq.counts())
            summary, rhat, zs, traces = run_multichain(
                counts, prior, iterations, burn_in, TABLE3_CHAINS,
                master.child_seed(idx), level=level)
            fp = mle.fixed_point_fit(counts)
            row.update(n=freq.n, total_tokens=freq.total_tokens,
                       mean=summary.mean, median=summary.median,
                       ci_lower=summary.credible_interval[0],
                       ci_upper=summary.credible_interval[1],
                       rhat=rhat,
                       geweke_z=max(zs, key=abs),
                       fixed_point=fp.rho_hat)
            details[name] = {"summary": summary, "rhat": rhat,
                             "geweke_z": zs, "traces": traces,
                             "markers_found": markers,
                             "fixed_point": fp}
        except (OSError, YuleSimonError) as exc:
            row["error"] = str(exc)
        rows.append(row)
    return TableResult(columns=columns, rows=rows, config=config,
                       details=details)
