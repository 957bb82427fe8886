"""Command-line interface.

Subcommands: run a single configuration, run the full experiment grid,
merge two stored trajectory networks, and regenerate the report tables
from a finished experiment directory.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import harness, problems, stn
from .moead import load_config

IGD_LEGEND = "delta_igd = variant - base; negative values mean the variant reached lower IGD"


def parse_seeds(text: str) -> list[int]:
    """Parse a seed list: 'a..b' inclusive range or comma-separated ints."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError(f"empty seed range {text!r}")
        return list(range(lo_i, hi_i + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def parse_names(text: str) -> list[str] | None:
    """Parse a name list: 'all' for the default set, else comma-separated."""
    text = text.strip()
    if text.lower() == "all":
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _add_run(subparsers) -> None:
    p = subparsers.add_parser("run", help="run one configuration once")
    p.add_argument("--problem", required=True, help="problem id, e.g. DASCMOP1 or 1")
    p.add_argument("--variant", default="base", help=f"one of {', '.join(harness.VARIANT_NAMES)}")
    p.add_argument("--seed", type=int, default=1, help="RNG seed")
    p.add_argument("--budget", type=int, default=None, help="evaluation budget override")
    p.add_argument("--config", default=None, help="TOML configuration file overriding --variant")
    p.add_argument("--out", default=None, help="output directory")


def _add_experiment(subparsers) -> None:
    p = subparsers.add_parser("experiment", help="run the full grid and write all reports")
    p.add_argument("--problems", default="all", help="'all' or comma-separated problem ids")
    p.add_argument("--variants", default="all", help="'all' or comma-separated variant names")
    p.add_argument("--seeds", default="1..10", help="seed range 'a..b' or comma-separated")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def _add_stn(subparsers) -> None:
    p = subparsers.add_parser("stn", help="merge two stored trajectory networks")
    p.add_argument("--variant", required=True, help="first variant name")
    p.add_argument("--against", required=True, help="second variant name")
    p.add_argument("--problem", required=True, help="problem id")
    p.add_argument("--out", required=True, help="output graph file (.graphml, .dot)")
    p.add_argument("--in", dest="in_dir", default=None, help="experiment directory with trajectory CSVs")


def _add_report(subparsers) -> None:
    p = subparsers.add_parser("report", help="regenerate delta and correlation tables")
    p.add_argument("--in", dest="in_dir", required=True, help="experiment directory")


def _cmd_run(args) -> int:
    if args.config is not None:
        from dataclasses import replace

        from . import moead

        config = load_config(args.config)
        if args.budget is not None:
            config = replace(config, budget=args.budget)
        out_dir = args.out or harness.default_out_dir()
        os.makedirs(out_dir, exist_ok=True)
        problem = problems.get_problem(args.problem)
        trace = moead.run(config, problem, args.seed)
        path = os.path.join(
            out_dir, harness.checkpoint_csv_name(problem.id, "custom", args.seed)
        )
        moead.write_checkpoint_csv(trace, path)
        print(f"checkpoint_path={path}")
        print(f"total_evaluations={trace.total_evaluations}")
        return 0
    summary = harness.run_single(
        args.problem, args.variant, seed=args.seed, budget=args.budget, out_dir=args.out
    )
    for key in (
        "problem",
        "variant",
        "seed",
        "final_hv",
        "hv_over_max",
        "accumulated_hv",
        "igd",
        "population_variance",
        "stn_nodes",
        "stn_edges",
        "checkpoint_path",
    ):
        print(f"{key}={summary[key]}")
    return 0


def _cmd_experiment(args) -> int:
    result = harness.run_experiment(
        problem_ids=parse_names(args.problems),
        variant_names=parse_names(args.variants),
        seeds=parse_seeds(args.seeds),
        out_dir=args.out,
        jobs=args.jobs,
    )
    print(f"out_dir={result.out_dir}")
    print(f"rows={len(result.metrics_rows)}")
    print(f"failures={len(result.failures)}")
    return 0 if not result.failures else 1


def _cmd_stn(args) -> int:
    in_dir = args.in_dir or harness.default_out_dir()
    problem = problems.get_problem(args.problem)
    graphs = []
    for name in (args.variant, args.against):
        path = os.path.join(in_dir, harness.trajectory_csv_name(problem.id, name))
        if not os.path.exists(path):
            print(f"missing trajectory file: {path}", file=sys.stderr)
            return 1
        graphs.append(stn.build_stn_from_points(stn.read_trajectory_csv(path)))
    merged = stn.merge_stn(graphs[0], graphs[1])
    stn.export_graph(merged, args.out)
    nodes, edges, shared = stn.stn_metrics(merged)
    print(f"out={args.out}")
    print(f"nodes={nodes}")
    print(f"edges={edges}")
    print(f"shared={shared}")
    return 0


def _cmd_report(args) -> int:
    delta_rows, correlation, columns = harness.report(args.in_dir)
    print(f"deltas={os.path.join(args.in_dir, harness.DELTAS_FILE)}")
    print(f"correlation={os.path.join(args.in_dir, harness.CORRELATION_FILE)}")
    print(f"delta_rows={len(delta_rows)}")
    print(f"correlation_columns={','.join(columns) if correlation is not None else ''}")
    print(IGD_LEGEND)
    return 0


def main(argv=None) -> int:
    """Entry point of the moead-stn command."""
    parser = argparse.ArgumentParser(
        prog="moead-stn",
        description="Component-wise MOEA/D runs, metrics, and trajectory networks",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_run(subparsers)
    _add_experiment(subparsers)
    _add_stn(subparsers)
    _add_report(subparsers)
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "experiment": _cmd_experiment,
        "stn": _cmd_stn,
        "report": _cmd_report,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
