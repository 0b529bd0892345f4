"""
Results table emission in the LB / UB reporting layout.

One row per instance: name, fleet sizes, then for every model its lower
bound, upper bound, status marker and time limit. Values are printed in
original units (fixed-point value / scale) at 2 decimals, rounded half up.
A dash means no value was retrieved. Optimal runs carry the "*" marker and
LB = UB.

Usage:
    from instance_io.results_table import ModelResult, ResultRow, emit_results_table

    row = ResultRow("att48_0_80", 2, 2, [ModelResult.from_outcome(outcome)])
    csv_text = emit_results_table([row])
"""

import io
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from core.solution import Solution
from engine.outcome import SolveOutcome, SolveStatus

DASH = "-"
BASE_COLUMNS = ["instance", "trucks", "drones"]
MODEL_COLUMNS = ["lb", "ub", "status", "time"]

STATUS_MARKERS = {
    SolveStatus.OPTIMAL: "*",
    SolveStatus.FEASIBLE: "feasible",
    SolveStatus.INFEASIBLE: "infeasible",
    SolveStatus.UNKNOWN: "unknown",
}

Number = Union[int, float, Decimal, str]


@dataclass(frozen=True)
class ModelResult:
    """What the table and the outcome files keep of one model run."""

    model: str
    status: SolveStatus
    lower_bound: Optional[int]
    upper_bound: Optional[int]
    time_limit: Optional[float]
    scale: int = 100
    elapsed: float = field(default=0.0, compare=False)
    nodes: int = 0
    trace: Tuple[Tuple[float, Optional[int], Optional[int]], ...] = ()
    solution: Optional[Solution] = None

    @classmethod
    def from_outcome(cls, outcome: SolveOutcome) -> "ModelResult":
        return cls(
            model=outcome.model_name,
            status=outcome.status,
            lower_bound=outcome.lower_bound,
            upper_bound=outcome.upper_bound,
            time_limit=outcome.time_budget,
            scale=outcome.scale,
            elapsed=outcome.elapsed,
            nodes=outcome.stats.nodes,
            trace=tuple((p.elapsed, p.lower_bound, p.upper_bound) for p in outcome.trace),
            solution=outcome.incumbent,
        )

    def to_dict(self) -> Dict[str, Any]:
        solution = None
        if self.solution is not None:
            solution = {
                "trucks": [list(t) for t in self.solution.truck_tours],
                "drones": [list(m) for m in self.solution.drone_missions],
            }
        return {
            "model": self.model,
            "status": self.status.value,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "time_limit": self.time_limit,
            "scale": self.scale,
            "elapsed": round(self.elapsed, 3),
            "nodes": self.nodes,
            "trace": [[round(t, 3), lb, ub] for t, lb, ub in self.trace],
            "solution": solution,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ModelResult":
        solution = data.get("solution")
        if solution is not None:
            solution = Solution.from_lists(solution.get("trucks", []), solution.get("drones", []))
        return cls(
            model=data["model"],
            status=SolveStatus(data["status"]),
            lower_bound=data.get("lower_bound"),
            upper_bound=data.get("upper_bound"),
            time_limit=data.get("time_limit"),
            scale=int(data.get("scale", 100)),
            elapsed=float(data.get("elapsed", 0.0)),
            nodes=int(data.get("nodes", 0)),
            trace=tuple((float(t), lb, ub) for t, lb, ub in data.get("trace", [])),
            solution=solution,
        )


@dataclass
class ResultRow:
    instance: str
    trucks: int
    drones: int
    results: List[ModelResult] = field(default_factory=list)

    def result_for(self, model: str) -> Optional[ModelResult]:
        for result in self.results:
            if result.model == model:
                return result
        return None


def format_value(value: Optional[Number], scale: int = 1) -> str:
    """Fixed-point ``value / scale`` at 2 decimals (half up); None -> '-'."""
    if value is None:
        return DASH
    amount = Decimal(str(value)) / Decimal(scale)
    return str(amount.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _model_cells(result: Optional[ModelResult]) -> List[str]:
    if result is None:
        return [DASH] * len(MODEL_COLUMNS)
    lower = result.lower_bound
    upper = result.upper_bound
    if result.status is SolveStatus.INFEASIBLE:
        lower = upper = None
    elif result.status is SolveStatus.OPTIMAL:
        lower = upper
    return [
        format_value(lower, result.scale),
        format_value(upper, result.scale),
        STATUS_MARKERS[result.status],
        format_value(result.time_limit),
    ]


def compare_to_best(result: Optional[ModelResult], best: Optional[Number]) -> str:
    """'better' / 'equal' / 'worse' than a best-known value at 2 decimals."""
    if result is None or best is None or result.upper_bound is None:
        return DASH
    ours = Decimal(format_value(result.upper_bound, result.scale))
    reference = Decimal(format_value(best))
    if ours < reference:
        return "better"
    if ours == reference:
        return "equal"
    return "worse"


def _model_order(rows: Sequence[ResultRow]) -> List[str]:
    order: List[str] = []
    for row in rows:
        for result in row.results:
            if result.model not in order:
                order.append(result.model)
    return order


def emit_results_table(
    rows: Sequence[ResultRow],
    best_known: Optional[Mapping[str, Number]] = None,
    models: Optional[Sequence[str]] = None,
) -> str:
    """
    CSV text of the results table.

    Args:
        rows: one entry per instance, emitted in the given order
        best_known: optional instance name -> best known value (original
            units); adds a ``<model>_vs_best`` column per model
        models: column order; defaults to first appearance across rows
    """
    models = list(models) if models is not None else _model_order(rows)
    columns = list(BASE_COLUMNS)
    for model in models:
        columns += [f"{model}_{suffix}" for suffix in MODEL_COLUMNS]
        if best_known is not None:
            columns.append(f"{model}_vs_best")

    records = []
    for row in rows:
        record = [row.instance, str(row.trucks), str(row.drones)]
        for model in models:
            result = row.result_for(model)
            record += _model_cells(result)
            if best_known is not None:
                record.append(compare_to_best(result, best_known.get(row.instance)))
        records.append(record)

    frame = pd.DataFrame(records, columns=columns, dtype=str)
    return frame.to_csv(index=False, lineterminator="\n")


def parse_results_table(text: str) -> pd.DataFrame:
    """Read a results CSV back; every cell stays a string."""
    return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
