#!/usr/bin/env python3
"""
nmls - non-monotone line searches on global-optimization benchmarks.

Subcommands:
    run             one solve, JSON record on stdout
    bench           the (function x start x method) grid into a results file
    profile         data profiles (CSV + SVG) from a results file
    verify          gradient and complexity-bound checks
    list-functions  the benchmark suite
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Sequence

from tqdm import tqdm

from core.bench import generate_starts, plan_hash, run_grid, status_counts
from core.errors import (ConfigError, InvalidParameter, NmlsError, SchemaMismatch,
                         UnknownFunction)
from core.function_registry import describe_suite, get_function
from core.objective import as_point
from core.params import DIRECTION_MODES, LineSearchParams, SolveConfig
from core.profiles import FIGURE_METHODS, data_profile, emit_csv, emit_plot, write_summary
from core.relaxation import RelaxationKind
from core.results_io import read_records, write_records
from core.solver import solve
from core.verify import SUITES, audit_trace, format_report, run_suite
from utils.config_manager import ConfigManager
from utils.event_bus import Event, EventType, event_bus, publish
from utils.logger import setup_logger
from utils.prng import MASK64

logger = logging.getLogger("nmls")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (InvalidParameter, ConfigError, UnknownFunction)

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yml")
METHOD_CHOICES = [kind.cli_name for kind in RelaxationKind]


def u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError(f"not a 64-bit unsigned integer: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return value


def sigma_value(text: str):
    if text.lower() == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"sigma must be a number or 'auto': {text!r}")


def point(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def method_list(text: str) -> List[RelaxationKind]:
    try:
        return [RelaxationKind.parse(name) for name in text.split(",") if name.strip()]
    except InvalidParameter as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser(config: ConfigManager) -> argparse.ArgumentParser:
    """
    Build the argument parser with defaults taken from the configuration.

    Args:
        config: Loaded configuration; its values become the shown defaults
    """
    formatter = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="nmls", description=__doc__.split("\n")[1],
                                     formatter_class=formatter)
    parser.add_argument("--config", default=config.config_path,
                        help="YAML configuration file")
    parser.add_argument("--log-level", default=config.get("logging.level"),
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="logging level (messages go to stderr)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    ls = config.get("linesearch")
    bench = config.get("bench")

    def add_linesearch_flags(p):
        p.add_argument("--theta", type=float, default=ls["theta"], help="decay exponent theta > 0")
        p.add_argument("--sigma", type=sigma_value, default=ls["sigma"],
                       help="relaxation scale, or 'auto' for max(|f(x0)|, 1e-8)")
        p.add_argument("--grad-tol", type=float, default=ls["grad_tol"],
                       help="stop when |grad f| <= grad-tol")
        p.add_argument("--max-iters", type=nonnegative_int, default=ls["max_iters"],
                       help="iteration limit")
        p.add_argument("--alpha0", type=float, default=ls["alpha0"], help="initial step")
        p.add_argument("--beta", type=float, default=ls["beta"], help="backtracking factor in (0, 1)")
        p.add_argument("--rho", type=float, default=ls["rho"], help="Armijo constant in (0, 1)")
        p.add_argument("--window-m", type=positive_int, default=ls["window_M"],
                       help="history window M")
        p.add_argument("--alpha-max", type=float, default=ls["alpha_max"],
                       help="cap on the carried-over step, unset for no cap")

    run = sub.add_parser("run", help="solve one problem", formatter_class=formatter)
    run.add_argument("--function", required=True, help="function name (see list-functions)")
    run.add_argument("--method", required=True, type=str.lower, choices=METHOD_CHOICES,
                     help="line-search method")
    start = run.add_mutually_exclusive_group(required=True)
    start.add_argument("--seed", type=u64, help="draw x0 uniformly from the box with this seed")
    start.add_argument("--x0", type=point, help="comma-separated starting point")
    run.add_argument("--budget-sg", type=nonnegative_int,
                     default=bench["budget_simplex_gradients"],
                     help="budget in simplex gradients, 0 for none")
    run.add_argument("--direction", choices=DIRECTION_MODES, default="bfgs",
                     help="search direction")
    run.add_argument("--charge-gradients", action="store_true",
                     default=bench["charge_gradients"],
                     help="charge each gradient as n evaluations")
    add_linesearch_flags(run)
    run.set_defaults(handler=cmd_run)

    bn = sub.add_parser("bench", help="run the benchmark grid", formatter_class=formatter)
    bn.add_argument("--starts", type=positive_int, default=bench["starts_per_function"],
                    help="starting points per function (360 for the full grid)")
    bn.add_argument("--budget-sg", type=positive_int, default=bench["budget_simplex_gradients"],
                    help="budget in simplex gradients")
    bn.add_argument("--methods", type=method_list, default=",".join(bench["methods"]),
                    help="comma-separated methods")
    bn.add_argument("--seed", type=u64, default=bench["master_seed"], help="master seed")
    bn.add_argument("--out", default="results.txt", help="results file")
    bn.add_argument("--jobs", type=positive_int, default=bench["parallelism"],
                    help="worker processes")
    bn.add_argument("--charge-gradients", action="store_true",
                    default=bench["charge_gradients"],
                    help="charge each gradient as n evaluations")
    bn.add_argument("--audit", action="store_true",
                    help="keep traces and re-check every accepted step")
    bn.add_argument("--no-progress", action="store_true", help="hide the progress bar")
    add_linesearch_flags(bn)
    bn.set_defaults(handler=cmd_bench)

    pr = sub.add_parser("profile", help="data profiles from a results file",
                        formatter_class=formatter)
    pr.add_argument("--in", dest="input", required=True, help="results file")
    pr.add_argument("--tau", type=float, default=config.get("profiles.tau"),
                    help="convergence tolerance")
    pr.add_argument("--out-prefix", default="", help="prefix of profiles.csv/.svg/summary.json")
    pr.add_argument("--methods", type=method_list, default=None,
                    help="compare only these methods")
    pr.add_argument("--figure", type=int, choices=sorted(FIGURE_METHODS), default=None,
                    help="method set of a published comparison")
    pr.add_argument("--max-alpha", type=positive_int, default=config.get("profiles.max_alpha"),
                    help="largest budget in simplex gradients")
    pr.set_defaults(handler=cmd_profile)

    vf = sub.add_parser("verify", help="run verification suites", formatter_class=formatter)
    vf.add_argument("--suite", choices=SUITES, default="all", help="suite to run")
    vf.set_defaults(handler=cmd_verify)

    lf = sub.add_parser("list-functions", help="list the benchmark suite",
                        formatter_class=formatter)
    lf.set_defaults(handler=cmd_list_functions)
    return parser


def line_search_params(config: ConfigManager, args) -> LineSearchParams:
    """Config values overridden by the flags."""
    values = config.line_search_params().to_mapping()
    values.update(alpha0=args.alpha0, beta=args.beta, rho=args.rho, theta=args.theta,
                  sigma=args.sigma, grad_tol=args.grad_tol, max_iters=args.max_iters,
                  window_M=args.window_m, alpha_max=args.alpha_max)
    return LineSearchParams.from_mapping(values)


def cmd_run(args, config: ConfigManager) -> int:
    fn = get_function(args.function)
    kind = RelaxationKind.parse(args.method)
    if args.x0 is not None:
        x0 = as_point(args.x0, fn.dim)
        start_index = 0
    else:
        instance = generate_starts(fn, 1, args.seed)[0]
        x0, start_index = instance.x0, instance.start_index
    budget = args.budget_sg * (fn.dim + 1) if args.budget_sg else None
    solve_config = SolveConfig(kind=kind, params=line_search_params(config, args),
                               f_budget=budget, charge_gradients=args.charge_gradients,
                               direction=args.direction)
    record = solve(fn.objective(), x0, solve_config, function=fn.key, start_index=start_index)
    print(json.dumps(record.to_dict()))
    if record.status.is_fatal:
        logger.error(f"{fn.key} {kind.label}: {record.status.value}")
        return EXIT_FAILURE
    return EXIT_OK


class ProgressReporter:
    """tqdm bar driven by bench events."""

    def __init__(self):
        self.bar: Optional[tqdm] = None

    def on_started(self, event: Event):
        self.bar = tqdm(total=event.data["total"], desc="bench", unit="run", file=sys.stderr)

    def on_run_finished(self, event: Event):
        if self.bar is not None:
            self.bar.set_postfix_str(f"{event.data['function']} {event.data['method']}", refresh=False)
            self.bar.update(1)

    def on_finished(self, event: Event):
        if self.bar is not None:
            self.bar.close()
            self.bar = None

    def attach(self):
        event_bus.subscribe(EventType.BENCH_STARTED)(self.on_started)
        event_bus.subscribe(EventType.RUN_FINISHED)(self.on_run_finished)
        event_bus.subscribe(EventType.BENCH_FINISHED)(self.on_finished)

    def detach(self):
        event_bus.unsubscribe(self.on_started)
        event_bus.unsubscribe(self.on_run_finished)
        event_bus.unsubscribe(self.on_finished)


def cmd_bench(args, config: ConfigManager) -> int:
    plan = config.bench_plan().with_overrides(
        methods=tuple(args.methods),
        starts_per_function=args.starts,
        budget_simplex_gradients=args.budget_sg,
        master_seed=args.seed,
        parallelism=args.jobs,
        charge_gradients=args.charge_gradients,
        keep_traces=True if args.audit else None,
        params=line_search_params(config, args),
    )
    reporter = ProgressReporter()
    if not args.no_progress:
        reporter.attach()
    try:
        records = run_grid(plan)
    finally:
        reporter.detach()

    write_records(args.out, records, plan.master_seed, plan_hash(plan))
    print(f"{len(records)} records written to {args.out}")
    for method, counts in status_counts(records).items():
        line = " ".join(f"{status}={count}" for status, count in counts.items())
        print(f"  {method}: {line}")

    if args.audit:
        violations = []
        for record in records:
            for problem in audit_trace(record, plan.params):
                violations.append(f"{record.method.label} {record.function}"
                                  f"[{record.start_index}] {problem}")
        print(f"trace audit: {len(violations)} violation(s)")
        for line in violations[:20]:
            print(f"  {line}")
        if violations:
            return EXIT_FAILURE
    return EXIT_OK


def cmd_profile(args, config: ConfigManager) -> int:
    results = read_records(args.input)
    if not results.records:
        raise SchemaMismatch(f"{args.input} contains no records")
    methods = args.methods
    if args.figure is not None:
        if methods is not None:
            raise InvalidParameter("--methods and --figure are mutually exclusive")
        methods = list(FIGURE_METHODS[args.figure])
    result = data_profile(results.records, tau=args.tau, methods=methods,
                          max_alpha=args.max_alpha)
    csv_path = f"{args.out_prefix}profiles.csv"
    svg_path = f"{args.out_prefix}profiles.svg"
    summary_path = f"{args.out_prefix}summary.json"
    emit_csv(result.profiles, csv_path)
    emit_plot(result.profiles, svg_path,
              title=f"tau = {args.tau:g}" if args.figure is None else f"figure {args.figure}")
    write_summary(result, summary_path)
    publish(Event(EventType.PROFILE_WRITTEN, data={"csv": csv_path, "svg": svg_path},
                  source="nmls"))
    print(f"{result.problems} problems ({result.degenerate} degenerate excluded)")
    for profile in result.profiles:
        print(f"  {profile.label}: {profile.values[-1]:.4f} solved at alpha={args.max_alpha}")
    return EXIT_OK


def cmd_verify(args, config: ConfigManager) -> int:
    results = run_suite(args.suite)
    print(format_report(args.suite, results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


def cmd_list_functions(args, config: ConfigManager) -> int:
    for row in describe_suite():
        best = "-" if row["known_best"] is None else f"{row['known_best']:g}"
        print(f"{row['key']:<24} n={row['dim']:<3} [{row['lower']:g}, {row['upper']:g}]  "
              f"f*={best:<10} {row['name']}")
    return EXIT_OK


def load_config(argv: Sequence[str]) -> ConfigManager:
    """Read --config ahead of the full parse so its values can become defaults."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    path = known.config
    if path is None and os.path.exists(DEFAULT_CONFIG):
        path = DEFAULT_CONFIG
    return ConfigManager(path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = load_config(argv)
    except ConfigError as e:
        print(f"nmls: {e}", file=sys.stderr)
        return EXIT_USAGE

    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    setup_logger(
        level=args.log_level,
        log_file=config.get("logging.file"),
        max_size=config.get("logging.max_size", 10),
        backup_count=config.get("logging.backup_count", 3),
    )

    try:
        return args.handler(args, config)
    except USAGE_ERRORS as e:
        logger.debug("Usage error", exc_info=True)
        print(f"nmls: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NmlsError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"nmls: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
