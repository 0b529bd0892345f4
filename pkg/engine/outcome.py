"""
Result types of an engine run.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from core.solution import Solution


class SolveStatus(str, Enum):
    OPTIMAL = "Optimal"
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class TracePoint:
    """Bounds at a moment of the run; ``elapsed`` does not take part in equality."""
    elapsed: float = field(compare=False)
    lower_bound: Optional[int]
    upper_bound: Optional[int]


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    restarts: int = 0
    failures: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.propagations += other.propagations
        self.restarts += other.restarts
        self.failures += other.failures


@dataclass(frozen=True)
class SolveOutcome:
    """
    Anytime result of solve().

    Bounds are integers in the instance's fixed-point units. ``lower_bound``
    is None only for Infeasible outcomes; ``upper_bound`` is the objective of
    ``incumbent`` when there is one.
    """

    status: SolveStatus
    incumbent: Optional[Solution]
    upper_bound: Optional[int]
    lower_bound: Optional[int]
    trace: Tuple[TracePoint, ...]
    stats: SearchStats
    model_name: str = ""
    time_budget: Optional[float] = None
    scale: int = 100
    elapsed: float = field(default=0.0, compare=False)

    @property
    def is_optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL

    @property
    def gap(self) -> Optional[float]:
        """Relative gap (UB - LB) / UB, None without both bounds."""
        if self.upper_bound is None or self.lower_bound is None:
            return None
        if self.upper_bound == 0:
            return 0.0
        return (self.upper_bound - self.lower_bound) / self.upper_bound

    def format_summary(self) -> str:
        def units(value):
            return "-" if value is None else f"{value / self.scale:.2f}"

        lines = [
            f"Model: {self.model_name}",
            f"Status: {self.status.value}",
            f"Lower bound: {units(self.lower_bound)}",
            f"Upper bound: {units(self.upper_bound)}",
            f"Elapsed: {self.elapsed:.2f}s",
            f"Nodes: {self.stats.nodes}  Propagations: {self.stats.propagations}  Restarts: {self.stats.restarts}",
        ]
        if self.incumbent is not None:
            for k, tour in enumerate(self.incumbent.truck_tours):
                lines.append(f"  truck {k}: {' '.join(map(str, tour)) or '(idle)'}")
            for d, missions in enumerate(self.incumbent.drone_missions):
                lines.append(f"  drone {d}: {' '.join(map(str, missions)) or '(idle)'}")
        return "\n".join(lines)
