"""
DroneSched command line.

Usage:
    python -m cli solve data/instances/example8.txt --model mt-3idx --time-limit 10
    python -m cli solve --manifest data/manifests/example_manifest.yaml
    python -m cli validate data/instances/example8.txt data/solutions/example8.sol
    python -m cli convert att48.tsp att48_0_80.txt --fraction 0.8 --trucks 2 --drones 2
    python -m cli bench data/instances --out results --jobs 4
    python -m cli oracle data/instances/example8.txt

Exit codes are listed in cli/exit_codes.py.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from cli.commands import cmd_bench, cmd_convert, cmd_oracle, cmd_solve, cmd_validate
from cli.exit_codes import ExitCode, exit_code_for
from cli.manifest import RunManifest, load_manifest
from config.search_configs import BranchingRule, RestartPolicy, SearchPresetRegistry
from config.settings import configure_logging, load_environment
from core.instance import Variant
from formulations.registry import MODEL_REGISTRY
from instance_io.converters import ConverterParams, DroneMetric, RoundingRule

logger = logging.getLogger(__name__)


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--manifest", type=Path, help="YAML run manifest")
    parser.add_argument(
        "--model", action="append", choices=sorted(MODEL_REGISTRY), dest="models",
        help="model to run (repeatable; default: every model of the instance variant)",
    )
    parser.add_argument("--preset", choices=SearchPresetRegistry().get_all_presets(), help="search preset")
    parser.add_argument("--time-limit", type=float, help="seconds per model and instance")
    parser.add_argument("--node-limit", type=int, help="search nodes per model and instance")
    parser.add_argument("--workers", type=int, help="search workers per run")
    parser.add_argument("--seed", type=int, help="random seed (default 0)")
    parser.add_argument("--branching", choices=[b.value for b in BranchingRule])
    parser.add_argument("--restarts", choices=[r.value for r in RestartPolicy])
    parser.add_argument("--force-truck-use", action="store_true", default=None,
                        help="require every truck to serve at least one customer")
    parser.add_argument("--out", type=Path, help="output directory (default: $DRONESCHED_OUTPUT_DIR or results)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dronesched", description="Parallel drone scheduling VRP solver")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve instances with one or more models")
    solve.add_argument("instances", nargs="*", type=Path, help="native instance files")
    _add_run_options(solve)

    validate = sub.add_parser("validate", help="check a solution against an instance")
    validate.add_argument("instance", type=Path)
    validate.add_argument("solution", type=Path)

    convert = sub.add_parser("convert", help="convert a TSPLIB / CVRPLIB coordinate file")
    convert.add_argument("source", type=Path)
    convert.add_argument("target", type=Path)
    convert.add_argument("--fraction", type=float, default=0.8, help="drone-eligible share of customers")
    convert.add_argument("--speed", type=float, default=1.0, help="drone speed relative to the truck")
    convert.add_argument("--rounding", choices=[r.value for r in RoundingRule],
                         help="truck distance rounding (default: from EDGE_WEIGHT_TYPE)")
    convert.add_argument("--drone-metric", choices=[m.value for m in DroneMetric], default=DroneMetric.EUCLIDEAN.value)
    convert.add_argument("--seed", type=int, default=0, help="eligibility sampling seed")
    convert.add_argument("--trucks", type=int, default=1)
    convert.add_argument("--drones", type=int, default=1)
    convert.add_argument("--scale", type=int, default=100)
    convert.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.MIN_TIME.value)
    convert.add_argument("--truck-cost", type=float, default=1.0, help="truck cost per time unit")
    convert.add_argument("--drone-cost", type=float, default=1.0, help="drone cost per time unit")
    convert.add_argument("--capacity", type=int, help="truck capacity (default: file CAPACITY)")
    convert.add_argument("--truck-time-limit", type=float)
    convert.add_argument("--drone-time-limit", type=float)

    bench = sub.add_parser("bench", help="solve a directory of instances and build the results table")
    bench.add_argument("directory", type=Path)
    _add_run_options(bench)
    bench.add_argument("--force", action="store_true", help="re-solve instances with existing outcome files")
    bench.add_argument("--jobs", type=int, default=1, help="instances solved concurrently")
    bench.add_argument("--no-progress", action="store_true")

    oracle = sub.add_parser("oracle", help="brute-force a tiny instance")
    oracle.add_argument("instance", type=Path)
    oracle.add_argument("--out", type=Path, help="write an optimal solution here")
    return parser


def _manifest(args: argparse.Namespace) -> RunManifest:
    manifest = load_manifest(args.manifest) if args.manifest else RunManifest()
    if args.preset:
        manifest.search = SearchPresetRegistry().get_config(args.preset)
    instances = getattr(args, "instances", None)
    if instances:
        manifest.instances = list(instances)
    return manifest.with_overrides(
        models=args.models,
        output=args.out,
        force_truck_use=args.force_truck_use,
        time_budget=args.time_limit,
        node_limit=args.node_limit,
        worker_count=args.workers,
        random_seed=args.seed,
        branching=args.branching,
        restart_policy=args.restarts,
    )


def _converter_params(args: argparse.Namespace) -> ConverterParams:
    return ConverterParams(
        eligible_fraction=args.fraction,
        drone_speed=args.speed,
        drone_metric=DroneMetric(args.drone_metric),
        seed=args.seed,
        rounding=RoundingRule(args.rounding) if args.rounding else None,
        trucks=args.trucks,
        drones=args.drones,
        scale=args.scale,
        variant=Variant(args.variant),
        truck_cost_per_unit=args.truck_cost,
        drone_cost_per_unit=args.drone_cost,
        capacity=args.capacity,
        truck_time_limit=args.truck_time_limit,
        drone_time_limit=args.drone_time_limit,
    )


def run(args: argparse.Namespace) -> ExitCode:
    if args.command == "solve":
        return cmd_solve(_manifest(args))
    if args.command == "validate":
        return cmd_validate(args.instance, args.solution)
    if args.command == "convert":
        return cmd_convert(args.source, args.target, _converter_params(args))
    if args.command == "bench":
        return cmd_bench(args.directory, _manifest(args), force=args.force, jobs=args.jobs,
                         show_progress=not args.no_progress)
    return cmd_oracle(args.instance, args.out)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    load_environment()
    if args.verbose:
        configure_logging("DEBUG")
    elif args.quiet:
        configure_logging("WARNING")
    else:
        configure_logging()

    try:
        return int(run(args))
    except Exception as e:
        code = exit_code_for(e)
        if code is ExitCode.INTERNAL_ERROR:
            logger.exception(f"{args.command} failed")
        else:
            logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return int(code)


if __name__ == "__main__":
    sys.exit(main())
