"""Command-line front end: run experiments, sweeps, analysis, and plots.

Commands::

    wealthsim run <config.json>           one experiment -> snapshots + report
    wealthsim sweep <sweep.json>          sweep -> aggregate CSV, KDE CSVs, SVG
    wealthsim analyze <snapshots.csv>     report for an existing snapshot file
    wealthsim plot <out.svg> <kde.csv>... overlay density series as SVG

Exit codes: 0 success, 2 configuration error, 3 runtime/simulation
error, 4 I/O error.  `--seed` overrides the config seed; `--threads`
only parallelizes sweep replicas and never changes output bytes.  The
environment variable WEALTHSIM_OUTPUT_DIR, when set, replaces the
config's output directory.
"""

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .angle import run_angle
from .config import ExperimentConfig, SweepSpec, derive_seed
from .errors import ConfigError, DomainError, SimulationError, WealthsimError
from .market import run_market
from .pairwise import run_pairwise
from .snapshots import (
    atomic_write_text,
    read_kde_csv,
    read_snapshot_csv,
    write_config_json,
    write_kde_csv,
    write_report_json,
    write_result_csv,
)
from .stats import analyze_sample, fit_gamma_mle, gini_empirical, kde_gaussian, ks_distance
from .svgplot import render_series_svg

RUNNERS = {"angle": run_angle, "market": run_market, "pairwise": run_pairwise}

AGGREGATE_COLUMNS = (
    "variable", "value", "replica", "seed", "gamma_shape", "gamma_scale",
    "gini", "ks", "mono_mean_wealth", "nonmono_mean_wealth",
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SimulationError, DomainError, WealthsimError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wealthsim",
        description="Agent-based wealth-exchange simulations and distribution analysis.",
    )
    sub = parser.add_subparsers(required=True)

    p_run = sub.add_parser("run", help="run one experiment from a JSON config")
    p_run.add_argument("config", help="experiment config file")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--threads", type=int, default=1,
                       help="worker count (accepted for interface parity; a single "
                            "run is inherently sequential)")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep from a JSON spec")
    p_sweep.add_argument("spec", help="sweep spec file")
    p_sweep.add_argument("--seed", type=int, default=None, help="override the base seed")
    p_sweep.add_argument("--threads", type=int, default=1,
                         help="replicas run in this many worker threads")
    p_sweep.set_defaults(func=cmd_sweep)

    p_an = sub.add_parser("analyze", help="analyze the last round of a snapshot CSV")
    p_an.add_argument("snapshot", help="snapshot CSV produced by `run`")
    p_an.set_defaults(func=cmd_analyze)

    p_plot = sub.add_parser("plot", help="overlay density CSVs as one SVG chart")
    p_plot.add_argument("output", help="SVG file to write")
    p_plot.add_argument("inputs", nargs="+", help="grid,density CSV files")
    p_plot.add_argument("--labels", default=None,
                        help="comma-separated legend labels (default: file stems)")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def _resolve_output(config: ExperimentConfig) -> Path:
    env = os.environ.get("WEALTHSIM_OUTPUT_DIR")
    return Path(env) if env else Path(config.output)


def _snapshot_round(snap) -> int:
    return snap.period if hasattr(snap, "period") else snap.round


def _apply_seed(config: ExperimentConfig, seed: int | None) -> ExperimentConfig:
    if seed is None:
        return config
    return dataclasses.replace(config, seed=seed).validate()


def _check_threads(threads: int) -> int:
    if threads < 1:
        raise ConfigError(f"--threads must be at least 1, got {threads}")
    return threads


def build_run_report(result) -> dict:
    """Analysis report for one finished run; analysis failures are
    recorded in the report rather than failing the run."""
    config = result.config
    report = {
        "model": config.model,
        "agents": config.agents,
        "rounds": config.rounds,
        "seed": config.seed,
        "backend": result.backend,
    }
    if not result.snapshots:
        report["analysis_error"] = "no snapshots recorded"
        return report
    last = result.snapshots[-1]
    report["analyzed_round"] = _snapshot_round(last)
    wealth = last.wealth
    try:
        report.update(analyze_sample(wealth))
    except DomainError as exc:
        report["analysis_error"] = str(exc)
        report["n"] = int(wealth.size)
        report["mean"] = float(np.mean(wealth))
    flags = getattr(result, "is_monopolist", None)
    if flags is not None and flags.any() and (~flags).any():
        report["monopolist_mean_wealth"] = float(np.mean(wealth[flags]))
        report["non_monopolist_mean_wealth"] = float(np.mean(wealth[~flags]))
    return report


def cmd_run(args) -> int:
    _check_threads(args.threads)
    config = _apply_seed(ExperimentConfig.load(args.config), args.seed)
    outdir = _resolve_output(config)
    result = RUNNERS[config.model](config)
    write_config_json(outdir / "config.json", config)
    write_result_csv(outdir / "snapshots.csv", result)
    write_report_json(outdir / "report.json", build_run_report(result))
    for name in ("config.json", "snapshots.csv", "report.json"):
        print(f"wrote {outdir / name}")
    return 0


def _sweep_cell(spec: SweepSpec, value_index: int, replica: int) -> dict:
    config = spec.config_for(value_index, replica)
    result = RUNNERS[config.model](config)
    wealth = result.snapshots[-1].wealth
    fit = fit_gamma_mle(wealth)
    cell = {
        "value": spec.values[value_index],
        "replica": replica,
        "seed": config.seed,
        "gamma_shape": fit.shape,
        "gamma_scale": fit.scale,
        "gini": gini_empirical(wealth),
        "ks": ks_distance(wealth, fit),
        "mono_mean_wealth": None,
        "nonmono_mean_wealth": None,
        "wealth": wealth,
    }
    flags = getattr(result, "is_monopolist", None)
    if flags is not None and flags.any() and (~flags).any():
        cell["mono_mean_wealth"] = float(np.mean(wealth[flags]))
        cell["nonmono_mean_wealth"] = float(np.mean(wealth[~flags]))
    return cell


def _csv_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _mean_or_none(values) -> float | None:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return float(np.mean(present))


def cmd_sweep(args) -> int:
    threads = _check_threads(args.threads)
    spec = SweepSpec.load(args.spec)
    if args.seed is not None:
        spec = dataclasses.replace(
            spec, base=dataclasses.replace(spec.base, seed=args.seed)
        ).validate()
    if not spec.base.snapshots:
        raise ConfigError("sweep base config must record at least one snapshot")
    outdir = _resolve_output(spec.base)

    cells_order = [(vi, r) for vi in range(len(spec.values)) for r in range(spec.replicas)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_sweep_cell, spec, vi, r) for vi, r in cells_order]
        cells = {}
        for (vi, r), fut in zip(cells_order, futures):
            try:
                cells[(vi, r)] = fut.result()
            except WealthsimError as exc:
                seed = derive_seed(spec.base.seed, vi, spec.replicas, r)
                raise SimulationError(
                    f"sweep aborted: replica failed (value={spec.values[vi]:g}, "
                    f"replica={r}, seed={seed}): {exc}"
                ) from exc

    lines = [",".join(AGGREGATE_COLUMNS)]
    series = []
    for vi, value in enumerate(spec.values):
        value_cells = [cells[(vi, r)] for r in range(spec.replicas)]
        for cell in value_cells:
            lines.append(",".join([
                spec.variable,
                _csv_number(cell["value"]),
                str(cell["replica"]),
                str(cell["seed"]),
                _csv_number(cell["gamma_shape"]),
                _csv_number(cell["gamma_scale"]),
                _csv_number(cell["gini"]),
                _csv_number(cell["ks"]),
                _csv_number(cell["mono_mean_wealth"]),
                _csv_number(cell["nonmono_mean_wealth"]),
            ]))
        lines.append(",".join([
            spec.variable,
            _csv_number(value),
            "mean",
            "",
            _csv_number(_mean_or_none([c["gamma_shape"] for c in value_cells])),
            _csv_number(_mean_or_none([c["gamma_scale"] for c in value_cells])),
            _csv_number(_mean_or_none([c["gini"] for c in value_cells])),
            _csv_number(_mean_or_none([c["ks"] for c in value_cells])),
            _csv_number(_mean_or_none([c["mono_mean_wealth"] for c in value_cells])),
            _csv_number(_mean_or_none([c["nonmono_mean_wealth"] for c in value_cells])),
        ]))
        pooled = np.concatenate([c["wealth"] for c in value_cells])
        kde = kde_gaussian(pooled)
        label = f"{spec.variable}={value:g}"
        kde_path = outdir / f"kde_{spec.variable}_{value:g}.csv"
        write_kde_csv(kde_path, kde)
        print(f"wrote {kde_path}")
        series.append((label, kde.grid, kde.density))

    aggregate_path = outdir / "aggregate.csv"
    atomic_write_text(aggregate_path, "\n".join(lines) + "\n")
    print(f"wrote {aggregate_path}")
    svg_path = outdir / "sweep.svg"
    atomic_write_text(svg_path, render_series_svg(series))
    print(f"wrote {svg_path}")
    return 0


def cmd_analyze(args) -> int:
    snap = read_snapshot_csv(args.snapshot)
    frame = snap.last()
    wealth = frame.data["wealth"]
    report = {"kind": snap.kind, "round": frame.round}
    report.update(analyze_sample(wealth))
    if snap.kind == "pairwise":
        flags = frame.data["is_monopolist"]
        if flags.any() and (~flags).any():
            report["monopolist_mean_wealth"] = float(np.mean(wealth[flags]))
            report["non_monopolist_mean_wealth"] = float(np.mean(wealth[~flags]))
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_plot(args) -> int:
    paths = [Path(p) for p in args.inputs]
    if args.labels is not None:
        labels = args.labels.split(",")
        if len(labels) != len(paths):
            raise ConfigError(
                f"got {len(labels)} labels for {len(paths)} input files"
            )
    else:
        labels = [p.stem for p in paths]
    series = []
    for label, path in zip(labels, paths):
        grid, density = read_kde_csv(path)
        series.append((label, grid, density))
    atomic_write_text(args.output, render_series_svg(series))
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
