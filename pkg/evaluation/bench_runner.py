"""
Benchmark driver: solve a suite of native instances with the selected models
and assemble the results table.

Every instance gets its own outcome file ``<out>/<file stem>.outcome.yaml``;
the CSV is always rebuilt from those files in instance-file order, so a
resumed or repeated run produces the same bytes as a fresh one.

Usage:
    from cli.manifest import RunManifest
    from evaluation.bench_runner import run_bench

    report = run_bench("data/instances", RunManifest(output=Path("results")))
    print(report.format_summary())
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from tqdm import tqdm

from cli.manifest import RunManifest
from config.search_configs import SearchConfig
from core.errors import DroneSchedError
from core.instance import Instance
from engine.search import solve
from formulations.registry import build_model
from instance_io.native_format import read_instance
from instance_io.outcome_files import outcome_path, read_outcome, write_outcome, write_text_atomic
from instance_io.results_table import ModelResult, ResultRow, emit_results_table

logger = logging.getLogger(__name__)

INSTANCE_GLOB = "*.txt"
RESULTS_FILE = "results.csv"


@dataclass
class BenchReport:
    """Summary of one suite run."""

    rows: List[ResultRow] = field(default_factory=list)
    solved: List[str] = field(default_factory=list)
    reused: List[str] = field(default_factory=list)
    failures: Dict[str, BaseException] = field(default_factory=dict)
    csv_path: Optional[Path] = None
    csv_text: str = ""

    @property
    def first_failure(self) -> Optional[BaseException]:
        return next(iter(self.failures.values()), None)

    def format_summary(self) -> str:
        lines = [
            "=" * 60,
            "BENCHMARK SUMMARY",
            "=" * 60,
            f"Instances: {len(self.rows) + len(self.failures)}",
            f"Solved: {len(self.solved)}  Reused: {len(self.reused)}  Failed: {len(self.failures)}",
        ]
        for name, error in self.failures.items():
            lines.append(f"  - {name}: {error}")
        if self.csv_path is not None:
            lines.append(f"Results table: {self.csv_path}")
        return "\n".join(lines)


def solve_instance(
    instance: Instance,
    models: Sequence[str],
    config: SearchConfig,
    force_truck_use: bool = False,
) -> ResultRow:
    """Run every model on one instance."""
    results = []
    for name in models:
        model = build_model(name, instance, force_truck_use=force_truck_use)
        outcome = solve(model, instance, config)
        logger.info(
            f"{instance.name} / {name}: {outcome.status.value}, "
            f"LB={outcome.lower_bound}, UB={outcome.upper_bound} ({outcome.elapsed:.2f}s)"
        )
        results.append(ModelResult.from_outcome(outcome))
    return ResultRow(instance.name, instance.truck_count, instance.drone_count, results)


def _solve_to_file(path: Path, manifest: RunManifest, target: Path) -> str:
    instance = read_instance(path)
    row = solve_instance(instance, manifest.models_for(instance), manifest.search, manifest.force_truck_use)
    write_outcome(target, row)
    return instance.name


def run_suite(
    paths: Sequence[Union[str, Path]],
    manifest: RunManifest,
    force: bool = False,
    jobs: int = 1,
    fail_fast: bool = False,
    show_progress: bool = True,
) -> BenchReport:
    """
    Solve ``paths`` (in the given order) and write outcome files plus the CSV.

    Instances whose outcome file already exists are reused unless ``force``.
    With ``fail_fast`` the first failing instance aborts the run; otherwise
    the failure is logged and recorded in the report.
    """
    out_dir = Path(manifest.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [Path(p) for p in paths]
    report = BenchReport()

    pending = []
    for path in paths:
        target = outcome_path(out_dir, path.stem)
        if target.exists() and not force:
            report.reused.append(path.stem)
            logger.info(f"Reusing {target}")
        else:
            pending.append((path, target))

    def record_failure(path: Path, error: BaseException) -> None:
        if fail_fast:
            raise error
        logger.error(f"Instance {path.name} failed: {error}")
        report.failures[path.stem] = error

    progress = tqdm(total=len(pending), desc="Solving instances", disable=not show_progress)
    if jobs <= 1 or len(pending) <= 1:
        for path, target in pending:
            try:
                _solve_to_file(path, manifest, target)
                report.solved.append(path.stem)
            except (DroneSchedError, OSError) as e:
                record_failure(path, e)
            progress.update(1)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_solve_to_file, path, manifest, target): path for path, target in pending}
            for future in as_completed(futures):
                path = futures[future]
                try:
                    future.result()
                    report.solved.append(path.stem)
                except (DroneSchedError, OSError) as e:
                    record_failure(path, e)
                progress.update(1)
    progress.close()

    report.solved.sort(key=[p.stem for p in paths].index)
    models = list(manifest.models) or None
    for path in paths:
        if path.stem in report.failures:
            continue
        report.rows.append(read_outcome(outcome_path(out_dir, path.stem)))

    report.csv_text = emit_results_table(report.rows, best_known=manifest.best_known, models=models)
    report.csv_path = out_dir / RESULTS_FILE
    write_text_atomic(report.csv_path, report.csv_text)
    logger.info(
        f"Suite finished: {len(report.solved)} solved, {len(report.reused)} reused, "
        f"{len(report.failures)} failed"
    )
    return report


def find_instances(directory: Union[str, Path]) -> List[Path]:
    """Native instance files of a directory, sorted by file name."""
    return sorted(Path(directory).glob(INSTANCE_GLOB), key=lambda p: p.name)


def run_bench(
    directory: Union[str, Path],
    manifest: RunManifest,
    force: bool = False,
    jobs: int = 1,
    show_progress: bool = True,
) -> BenchReport:
    """Solve every instance file of ``directory``; an empty directory yields a header-only CSV."""
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a directory")
    paths = find_instances(directory)
    if not paths:
        logger.warning(f"No instance files ({INSTANCE_GLOB}) in {directory}")
    return run_suite(paths, manifest, force=force, jobs=jobs, show_progress=show_progress)
