"""
Command implementations. Each command returns an ExitCode and reports to
stdout; exceptions propagate to cli.main, which maps them to exit codes.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from cli.exit_codes import ExitCode, exit_code_for
from cli.manifest import RunManifest
from core.errors import ConfigError
from core.objective import raw_objective
from core.validator import validate_solution
from evaluation.bench_runner import run_bench, run_suite
from instance_io.converters import ConverterParams, convert_file
from instance_io.native_format import read_instance, write_instance
from instance_io.results_table import format_value
from instance_io.solution_format import read_solution, write_solution
from oracle.brute_force import brute_force

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def cmd_solve(manifest: RunManifest, show_progress: bool = False) -> ExitCode:
    """Solve every manifest instance; any unreadable file or model mismatch aborts the run."""
    if not manifest.instances:
        raise ConfigError("no instances to solve")
    report = run_suite(manifest.instances, manifest, force=True, fail_fast=True, show_progress=show_progress)
    for row in report.rows:
        print(f"\n{row.instance} (trucks={row.trucks}, drones={row.drones})")
        for result in row.results:
            print(
                f"  {result.model:8s} {result.status.value:10s} "
                f"LB={format_value(result.lower_bound, result.scale)} "
                f"UB={format_value(result.upper_bound, result.scale)} "
                f"({result.elapsed:.2f}s, {result.nodes} nodes)"
            )
    print(f"\nResults table: {report.csv_path}")
    return ExitCode.OK


def cmd_validate(instance_path: PathLike, solution_path: PathLike) -> ExitCode:
    """Exit OK iff the solution is feasible; prints the report and, when feasible, the objective."""
    instance = read_instance(instance_path)
    solution = read_solution(solution_path)
    report = validate_solution(instance, solution)
    print(report.format_summary())
    if not report.feasible:
        return ExitCode.INFEASIBLE
    value = raw_objective(instance, solution)
    label = "Total cost" if instance.is_min_cost else "Makespan"
    print(f"{label}: {format_value(value, instance.scale)}")
    return ExitCode.OK


def cmd_convert(source: PathLike, target: PathLike, params: ConverterParams) -> ExitCode:
    instance = convert_file(source, params)
    write_instance(target, instance)
    print(f"Wrote {instance.name} (n={instance.n}, eligible={len(instance.drone_eligible)}) to {target}")
    return ExitCode.OK


def cmd_bench(
    directory: PathLike,
    manifest: RunManifest,
    force: bool = False,
    jobs: int = 1,
    show_progress: bool = True,
) -> ExitCode:
    """
    Solve a directory of instances. Failing instance files are skipped; the
    exit code then reflects the first failure.
    """
    if jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {jobs}")
    report = run_bench(directory, manifest, force=force, jobs=jobs, show_progress=show_progress)
    print(report.format_summary())
    if report.first_failure is not None:
        return exit_code_for(report.first_failure)
    return ExitCode.OK


def cmd_oracle(instance_path: PathLike, out: Optional[PathLike] = None) -> ExitCode:
    """Brute-force a tiny instance; prints the optimum and one optimal solution."""
    instance = read_instance(instance_path)
    result = brute_force(instance)
    print(f"Feasible solutions: {result.feasible_count}")
    if not result.feasible:
        print("Status: INFEASIBLE")
        return ExitCode.INFEASIBLE
    print(f"Optimum: {format_value(result.optimum, instance.scale)}")
    best = result.witnesses[0]
    for k, tour in enumerate(best.truck_tours):
        print(f"  truck {k}: {' '.join(map(str, tour)) or '(idle)'}")
    for d, missions in enumerate(best.drone_missions):
        print(f"  drone {d}: {' '.join(map(str, missions)) or '(idle)'}")
    if out is not None:
        write_solution(out, best)
    return ExitCode.OK
