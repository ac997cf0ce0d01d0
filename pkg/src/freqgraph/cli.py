"""Command-line surface: estimate, simulate, benchmark.

Exit codes: 0 success, 2 usage/configuration, 3 input format or I/O,
4 numeric failure, 5 non-convergence (with ``--strict`` only).  All
outputs land in ``--out-dir`` together with a ``manifest.json`` whose
identity hash ties the artifacts to the resolved configuration; report
paths additionally render matplotlib figures next to the CSV/JSON data
unless ``--no-figures`` is given.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from pathlib import Path

from . import figures
from .admm import SolverConfig, solve
from .artifacts import RunManifest, read_series_csv, write_json, write_matrix_csv, \
    write_series_csv, write_table_csv
from .bench import BenchmarkConfig, benchmark
from .errors import (
    DataFormatError,
    InvalidConfigurationError,
    NumericFailureError,
)
from .selection import select_edges, tune
from .spectral import make_grid, resolve_width, smoothed_psd_from_series
from .synthetic import BURN_IN, generate_model, simulate, true_edges

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4
EXIT_NO_CONVERGENCE = 5


def _solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rho0", type=float, default=2.0, help="initial ADMM penalty")
    parser.add_argument("--mu", type=float, default=10.0, help="residual balance factor")
    parser.add_argument("--tau-abs", type=float, default=1e-4, help="absolute tolerance")
    parser.add_argument("--tau-rel", type=float, default=1e-4, help="relative tolerance")
    parser.add_argument("--max-iter", type=int, default=1000, help="ADMM iteration cap")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqgraph",
        description="Conditional independence graphs for stationary time series "
        "via sparse-group-lasso inverse spectral estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate a graph from a CSV time series")
    est.add_argument("input", type=Path, help="CSV with n rows and p numeric columns")
    est.add_argument("--no-header", action="store_true", help="treat every row as data")
    group = est.add_mutually_exclusive_group(required=True)
    group.add_argument("--K", type=int, help="odd smoothing window width")
    group.add_argument("--M", type=int, help="window count; width derived from it")
    est.add_argument("--lambda", dest="lam", type=float, help="penalty level")
    est.add_argument("--alpha", type=float, default=0.1, help="lasso/group mix in [0, 1]")
    est.add_argument("--bic", action="store_true", help="tune lambda and alpha by BIC")
    est.add_argument("--strict", action="store_true",
                     help="fail with exit code 5 if the solver does not converge")
    est.add_argument("--out-dir", type=Path, default=Path("."))
    est.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    _solver_flags(est)

    sim = sub.add_parser("simulate", help="generate the clustered VAR benchmark series")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--communities", type=int, default=16)
    sim.add_argument("--community-size", type=int, default=8)
    sim.add_argument("--n", type=int, required=True,
                     help=f"total simulated samples; the first {BURN_IN} are discarded")
    sim.add_argument("--out-dir", type=Path, default=Path("."))

    ben = sub.add_parser("benchmark", help="edge-recovery benchmark on synthetic data")
    ben.add_argument("--runs", type=int, default=10)
    ben.add_argument("--n-list", type=str, default="512,1024",
                     help="comma-separated sample sizes")
    ben.add_argument("--M", type=int, default=4, help="window count for the spectral method")
    ben.add_argument("--methods", type=str, default="proposed,iid")
    ben.add_argument("--communities", type=int, default=4)
    ben.add_argument("--community-size", type=int, default=8)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--out-dir", type=Path, default=Path("."))
    ben.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    _solver_flags(ben)
    return parser


def _solver_config(args, lam: float = 0.0, alpha: float = 0.1) -> SolverConfig:
    return SolverConfig(
        lam=lam,
        alpha=alpha,
        rho0=args.rho0,
        mu=args.mu,
        tau_abs=args.tau_abs,
        tau_rel=args.tau_rel,
        max_iter=args.max_iter,
    )


def _cmd_estimate(args) -> int:
    series, columns = read_series_csv(args.input, no_header=args.no_header)
    n_rows, p = series.shape
    if p < 2:
        raise DataFormatError(f"need at least 2 columns, got {p}")
    n_used = n_rows - (n_rows % 2)

    if args.K is not None:
        width = args.K
    else:
        width = resolve_width(n_used, args.M)
    grid = make_grid(n_used, width)
    if args.bic and args.lam is not None:
        raise InvalidConfigurationError("--lambda and --bic are mutually exclusive")
    if not args.bic and args.lam is None:
        raise InvalidConfigurationError("provide --lambda or use --bic")

    start = time.perf_counter()
    s = smoothed_psd_from_series(series, width)

    base = _solver_config(args, lam=args.lam or 0.0, alpha=args.alpha)
    tuning = None
    if args.bic:
        tuning = tune(s, base)
        lam, alpha = tuning.lam, tuning.alpha
    else:
        lam, alpha = args.lam, args.alpha
    state, report = solve(s, base.replace(lam=lam, alpha=alpha))
    graph = select_edges(state.w)
    elapsed = time.perf_counter() - start

    manifest = RunManifest(
        command="estimate",
        config={
            "n_rows": int(n_rows),
            "n_used": int(n_used),
            "p": int(p),
            "K": int(grid.width),
            "M": int(grid.num_freqs),
            "lambda": float(lam),
            "alpha": float(alpha),
            "bic": bool(args.bic),
            "rho0": args.rho0,
            "mu": args.mu,
            "tau_abs": args.tau_abs,
            "tau_rel": args.tau_rel,
            "max_iter": args.max_iter,
        },
        inputs={str(args.input): hashlib.sha256(Path(args.input).read_bytes()).hexdigest()},
    )
    manifest.record_timing("estimate_seconds", elapsed)

    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)

    edges_payload = graph.as_dict()
    if columns:
        edges_payload["columns"] = columns
    edges_payload["lambda"] = float(lam)
    edges_payload["alpha"] = float(alpha)
    edges_payload["manifest"] = manifest.as_dict()
    write_json(out / "edges.json", edges_payload)

    write_matrix_csv(out / "adjacency.csv", graph.weighted_adjacency, manifest)
    write_json(out / "report.json", report.as_dict(), manifest)
    if tuning is not None:
        write_table_csv(
            out / "bic_table.csv",
            tuning.bic_table,
            ["stage", "lambda", "alpha", "bic", "num_edges", "converged"],
            manifest,
        )
    if not args.no_figures:
        figures.save_adjacency_heatmap(
            graph.weighted_adjacency,
            out / "adjacency.png",
            title=f"Estimated graph ({len(graph.edges)} edges)",
            provenance=f"manifest {manifest.identity_hash[:16]}",
        )
        manifest.register(out / "adjacency.png")
    for name in ["edges.json", "adjacency.csv", "report.json"]:
        manifest.register(out / name)
    if tuning is not None:
        manifest.register(out / "bic_table.csv")
    manifest.write(out / "manifest.json")

    print(f"estimate: {len(graph.edges)} edges at lambda={lam:g}, alpha={alpha:g} "
          f"({'converged' if report.converged else 'NOT converged'} "
          f"after {report.iterations} iterations)")
    if args.strict and not report.converged:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.n <= BURN_IN + 1:
        raise InvalidConfigurationError(
            f"--n must exceed {BURN_IN + 1} (the first {BURN_IN} samples are discarded)"
        )
    retained = args.n - BURN_IN
    start = time.perf_counter()
    model = generate_model(args.seed, args.communities, args.community_size)
    series = simulate(model, retained, args.seed)
    truth = true_edges(model)
    elapsed = time.perf_counter() - start

    manifest = RunManifest(
        command="simulate",
        config={
            "seed": int(args.seed),
            "communities": int(args.communities),
            "community_size": int(args.community_size),
            "n_total": int(args.n),
            "n_retained": int(retained),
            "burn_in": BURN_IN,
            "generator": model.generator,
        },
    )
    manifest.record_timing("simulate_seconds", elapsed)

    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)

    write_series_csv(out / "series.csv", series, manifest)
    write_json(
        out / "model.json",
        {
            "p": model.dim,
            "order": model.order,
            "community_size": model.community_size,
            "communities": model.communities,
            "seed": model.seed,
            "generator": model.generator,
            "coefficients_row_major": [
                [model.coefficients[q, i].reshape(-1).tolist() for i in range(model.order)]
                for q in range(model.num_communities)
            ],
        },
        manifest,
    )
    write_json(
        out / "truth_edges.json",
        {
            "p": model.dim,
            "num_edges": len(truth.edges),
            "edges": sorted([list(e) for e in truth.edges]),
        },
        manifest,
    )
    for name in ["series.csv", "model.json", "truth_edges.json"]:
        manifest.register(out / name)
    manifest.write(out / "manifest.json")
    print(f"simulate: wrote {retained} x {model.dim} series, "
          f"{len(truth.edges)} true edges")
    return EXIT_OK


def _cmd_benchmark(args) -> int:
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    n_list = tuple(int(v) for v in args.n_list.split(",") if v.strip())
    cfg = BenchmarkConfig(
        methods=methods,
        n_list=n_list,
        runs=args.runs,
        num_communities=args.communities,
        community_size=args.community_size,
        num_freqs=args.M,
        seed=args.seed,
        solver=_solver_config(args),
    )
    start = time.perf_counter()
    summary, run_rows = benchmark(cfg)
    elapsed = time.perf_counter() - start

    manifest = RunManifest(
        command="benchmark",
        config={
            "methods": list(methods),
            "n_list": list(n_list),
            "runs": int(args.runs),
            "communities": int(args.communities),
            "community_size": int(args.community_size),
            "M": int(args.M),
            "seed": int(args.seed),
            "rho0": args.rho0,
            "mu": args.mu,
            "tau_abs": args.tau_abs,
            "tau_rel": args.tau_rel,
            "max_iter": args.max_iter,
        },
    )
    manifest.record_timing("benchmark_seconds", elapsed)

    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)

    columns = ["method", "n", "runs", "f1_mean", "f1_std", "f1_bic_mean", "f1_bic_std",
               "seconds_mean"]
    write_table_csv(out / "benchmark.csv", summary, columns, manifest)
    detail_columns = ["method", "n", "run", "f1", "f1_bic", "seconds", "lam", "alpha",
                      "lam_bic", "alpha_bic"]
    write_table_csv(
        out / "benchmark_runs.csv",
        [vars(r) for r in run_rows],
        detail_columns,
        manifest,
    )
    if not args.no_figures:
        provenance = f"manifest {manifest.identity_hash[:16]}"
        figures.save_benchmark_f1(summary, out / "benchmark_f1.png", provenance=provenance)
        figures.save_benchmark_timing(summary, out / "benchmark_timing.png",
                                      provenance=provenance)
        manifest.register(out / "benchmark_f1.png")
        manifest.register(out / "benchmark_timing.png")
    manifest.register(out / "benchmark.csv")
    manifest.register(out / "benchmark_runs.csv")
    manifest.write(out / "manifest.json")

    for row in summary:
        print(f"benchmark: {row['method']:>8s} n={row['n']:<6d} "
              f"F1={row['f1_mean']:.3f}±{row['f1_std']:.3f} "
              f"F1(BIC)={row['f1_bic_mean']:.3f} "
              f"{row['seconds_mean']:.2f}s/run")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "estimate":
            return _cmd_estimate(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_benchmark(args)
    except InvalidConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
