"""Command-line interface.

Subcommands: pmf, sample, fit, regress, mle, text, diag, and
study table1|table2|table3.  Every command is deterministic given its
flags and seed; errors exit nonzero with a one-object JSON description
on stderr.  Numeric file output carries 17 significant digits.
"""

import argparse
import sys

import numpy as np

from . import __version__, corpus, distribution, fileio, mle, study
from .diagnostics import build_report, progressive_mean, rhat_by_prefix
from .errors import (ConvergenceError, DataError, EncodingError,
                     ParameterError, YuleSimonError)
from .gibbs import ChainConfig, GammaPrior, run_chain, summarize
from .regression import RegressionConfig, RegressionDesign, run_regression
from .rng import RngState


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0,
                        help="master seed (64-bit unsigned)")
    parser.add_argument("--out", default=None,
                        help="output path or prefix")
    parser.add_argument("--quick", action="store_true",
                        help="shrink run lengths 10x (and replicates to 5) "
                             "for desk-scale runs")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="table output format (study command)")


def _print(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj, out_path):
    if out_path:
        fileio.write_json(out_path, obj)
    else:
        _print(fileio.dump_json(obj))


def cmd_pmf(args):
    value = distribution.log_pmf(args.k, args.rho) if args.log \
        else distribution.pmf(args.k, args.rho)
    _print(fileio.format_float(value))
    return 0


def cmd_sample(args):
    if args.n < 1:
        raise ParameterError(f"--n must be >= 1, got {args.n}")
    draws = distribution.sample(RngState(args.seed), args.rho, size=args.n)
    lines = "\n".join(str(int(v)) for v in draws) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    return 0


def _scaled_run(iterations, burn_in, quick):
    if not quick:
        return iterations, burn_in
    return max(1, iterations // 10), burn_in // 10


def cmd_fit(args):
    counts = fileio.load_counts(args.data)
    prior = GammaPrior(a=args.a, b=args.b)
    iterations, burn_in = _scaled_run(args.iters, args.burnin, args.quick)
    if args.chains < 1:
        raise ParameterError(f"--chains must be >= 1, got {args.chains}")
    summary, rhat, _, traces = study.run_multichain(
        counts, prior, iterations, burn_in, args.chains, args.seed,
        level=args.level, initial_rho=args.init_rho, thinning=args.thin)
    report = {
        "mean": summary.mean,
        "median": summary.median,
        "ci_lower": summary.credible_interval[0],
        "ci_upper": summary.credible_interval[1],
        "level": args.level,
        "n_retained": summary.n_retained,
        "chains": args.chains,
        "iterations": iterations,
        "burn_in": burn_in,
        "seed": args.seed,
    }
    if args.chains > 1:
        report["rhat"] = rhat
    if args.out:
        if args.chains == 1:
            fileio.write_trace_csv(f"{args.out}.trace.csv", traces[0])
        else:
            for c, trace in enumerate(traces):
                fileio.write_trace_csv(f"{args.out}.chain{c}.trace.csv",
                                       trace)
        fileio.write_json(f"{args.out}.summary.json", report)
    else:
        _print(fileio.dump_json(report))
    return 0


def cmd_regress(args):
    counts, regressors = fileio.load_regression_csv(args.data)
    design = RegressionDesign.from_regressors(counts, regressors)
    iterations, burn_in = _scaled_run(args.iters, args.burnin, args.quick)
    initial_beta = None
    if args.init_beta:
        try:
            initial_beta = tuple(float(v) for v in args.init_beta.split(","))
        except ValueError:
            raise ParameterError(
                f"--init-beta must be comma-separated numbers, "
                f"got {args.init_beta!r}") from None
    cfg = RegressionConfig(iterations=iterations, burn_in=burn_in,
                           thinning=args.thin, seed=args.seed,
                           proposal_scale=args.scale,
                           initial_beta=initial_beta,
                           adapt=not args.no_adapt)
    trace = run_regression(design, cfg)
    coefficients = {}
    for name in trace.parameter_names:
        s = summarize(trace, level=args.level, parameter=name)
        coefficients[name] = {
            "mean": s.mean,
            "median": s.median,
            "ci_lower": s.credible_interval[0],
            "ci_upper": s.credible_interval[1],
        }
    report = {
        "coefficients": coefficients,
        "acceptance_rate": trace.metadata["acceptance_rate"],
        "proposal_scale_final": trace.metadata["proposal_scale_final"],
        "level": args.level,
        "n_retained": len(trace),
        "iterations": iterations,
        "burn_in": burn_in,
        "seed": args.seed,
    }
    if args.out:
        fileio.write_trace_csv(f"{args.out}.trace.csv", trace)
        fileio.write_json(f"{args.out}.summary.json", report)
    else:
        _print(fileio.dump_json(report))
    return 0


def cmd_mle(args):
    counts = fileio.load_counts(args.data)
    cfg = mle.FixedPointConfig(tolerance=args.tol,
                               max_iterations=args.max_iters,
                               initial_rho=args.init)
    result = mle.fixed_point_fit(counts, cfg)
    report = {
        "rho_hat": result.rho_hat,
        "iterations": result.iterations,
        "score_residual": abs(mle.score(counts, result.rho_hat)),
        "loglik": mle.log_likelihood(counts, result.rho_hat),
    }
    _emit_json(report, args.out)
    return 0


def cmd_text(args):
    if not args.out:
        raise ParameterError("text requires --out for the counts CSV")
    rules = corpus.TokenizerRules(case_folding=not args.no_fold)
    freq, markers_found = corpus.frequencies_from_file(
        args.infile, rules, strip_boilerplate=not args.keep_boilerplate)
    if not args.keep_boilerplate and not markers_found:
        sys.stderr.write("warning: boilerplate markers not found; "
                         "processed the whole file\n")
    fileio.write_frequency_csv(args.out, freq)
    return 0


def cmd_diag(args):
    chains = []
    for path in args.traces:
        names, states = fileio.read_trace_csv(path)
        param = args.param or names[0]
        if param not in names:
            raise DataError(f"{path}: no parameter column {param!r}; "
                            f"has {names}")
        chains.append(states[:, names.index(param)])
    param = args.param or "trace"
    report = build_report(chains, parameter=param,
                          frac_first=args.first, frac_last=args.last,
                          spectral=not args.plain_variance)
    _print(fileio.dump_json(report.to_dict()))
    if args.out:
        for c, chain in enumerate(chains):
            running = progressive_mean(chain)
            fileio.write_csv(f"{args.out}.chain{c}.progressive.csv",
                             ["t", "running_mean"],
                             ((t + 1, running[t]) for t in range(running.size)))
        if len(chains) >= 2:
            lengths, rhats = rhat_by_prefix(chains)
            fileio.write_csv(f"{args.out}.rhat_prefix.csv",
                             ["length", "rhat"], zip(lengths, rhats))
    return 0


def cmd_study(args):
    if not args.out:
        raise ParameterError("study requires --out as a file prefix")
    if args.table == "table1":
        result = study.run_table1(study.table1_spec(seed=args.seed,
                                                    quick=args.quick))
    elif args.table == "table2":
        result = study.run_table2(study.table2_spec(seed=args.seed,
                                                    quick=args.quick))
    else:
        if not args.texts:
            raise ParameterError("study table3 requires --texts FILE...")
        prior = GammaPrior(a=args.a, b=args.b)
        result = study.run_table3(
            args.texts, prior=prior, seed=args.seed, quick=args.quick,
            case_folding=not args.no_fold,
            strip_boilerplate=not args.keep_boilerplate)
    if args.format == "json":
        result.write_json(f"{args.out}.json")
    else:
        result.write_csv(f"{args.out}.csv")
        fileio.write_json(f"{args.out}.config.json", result.config)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="yulesimon",
        description="Bayesian and maximum-likelihood inference for the "
                    "Yule-Simon distribution.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmf", help="evaluate the probability mass function")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--log", action="store_true", help="print the log mass")
    _add_common(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("sample", help="draw from the distribution")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--n", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("fit", help="Gibbs-sample the posterior of rho")
    p.add_argument("--data", required=True,
                   help="counts: one integer per line, or word,count CSV")
    p.add_argument("--a", type=float, default=0.25, help="prior shape")
    p.add_argument("--b", type=float, default=0.05, help="prior rate")
    p.add_argument("--iters", type=int, default=50_000)
    p.add_argument("--burnin", type=int, default=10_000)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--init-rho", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("regress", help="Metropolis-within-Gibbs regression")
    p.add_argument("--data", required=True,
                   help="CSV with header k,x2[,x3,...]")
    p.add_argument("--iters", type=int, default=50_000)
    p.add_argument("--burnin", type=int, default=10_000)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--scale", type=float, default=0.1,
                   help="random-walk proposal scale")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--init-beta", default=None,
                   help="comma-separated starting coefficients")
    p.add_argument("--no-adapt", action="store_true",
                   help="disable burn-in proposal-scale adaptation")
    _add_common(p)
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("mle", help="fixed-point maximum likelihood")
    p.add_argument("--data", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=10_000)
    p.add_argument("--init", type=float, default=1.0)
    _add_common(p)
    p.set_defaults(func=cmd_mle)

    p = sub.add_parser("text", help="tokenize a book into word counts")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--no-fold", action="store_true",
                   help="keep original letter case")
    p.add_argument("--keep-boilerplate", action="store_true",
                   help="skip license header/footer stripping")
    _add_common(p)
    p.set_defaults(func=cmd_text)

    p = sub.add_parser("diag", help="convergence diagnostics on trace CSVs")
    p.add_argument("--traces", nargs="+", required=True)
    p.add_argument("--param", default=None,
                   help="parameter column (default: first)")
    p.add_argument("--first", type=float, default=0.1,
                   help="early-segment fraction")
    p.add_argument("--last", type=float, default=0.5,
                   help="late-segment fraction")
    p.add_argument("--plain-variance", action="store_true",
                   help="use raw segment variances instead of the "
                        "batch-means spectral proxy")
    _add_common(p)
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("study", help="rebuild the summary tables")
    p.add_argument("table", choices=("table1", "table2", "table3"))
    p.add_argument("--texts", nargs="+", default=None,
                   help="novel text files (table3)")
    p.add_argument("--a", type=float, default=0.25, help="prior shape "
                   "(table3)")
    p.add_argument("--b", type=float, default=0.05, help="prior rate "
                   "(table3)")
    p.add_argument("--no-fold", action="store_true")
    p.add_argument("--keep-boilerplate", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_study)

    return parser


def _error_payload(exc):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, EncodingError) and exc.byte_offset is not None:
        payload["byte_offset"] = exc.byte_offset
    if isinstance(exc, ConvergenceError):
        if exc.last_iterate is not None:
            payload["last_iterate"] = exc.last_iterate
        if exc.iterations is not None:
            payload["iterations"] = exc.iterations
    return payload


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (YuleSimonError, OSError) as exc:
        sys.stderr.write(fileio.dump_json(_error_payload(exc)) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
