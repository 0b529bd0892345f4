"""
Objective evaluation.

MIN_TIME: makespan, the largest operating time over every truck tour and
every drone's summed mission times. MIN_COST: total truck arc cost plus
drone mission costs.
"""

from typing import List

from core.errors import UndefinedObjectiveError
from core.instance import Instance
from core.measures import mission_cost, mission_time, tour_cost, tour_time
from core.solution import Solution
from core.validator import validate_solution


def vehicle_times(instance: Instance, solution: Solution) -> List[int]:
    """Operating time of every truck followed by every drone."""
    trucks = [tour_time(instance, t) for t in solution.truck_tours]
    drones = [mission_time(instance, m) for m in solution.drone_missions]
    return trucks + drones


def total_cost(instance: Instance, solution: Solution) -> int:
    return (
        sum(tour_cost(instance, t) for t in solution.truck_tours)
        + sum(mission_cost(instance, m) for m in solution.drone_missions)
    )


def raw_objective(instance: Instance, solution: Solution) -> int:
    """Objective without the feasibility check (callers guarantee feasibility)."""
    if instance.is_min_cost:
        return total_cost(instance, solution)
    return max(vehicle_times(instance, solution), default=0)


def objective_value(instance: Instance, solution: Solution) -> int:
    """
    Objective of a feasible solution, in fixed-point units.

    Raises:
        UndefinedObjectiveError: the solution is infeasible.
        StructuralError: the solution does not fit the instance.
    """
    report = validate_solution(instance, solution)
    if not report.feasible:
        raise UndefinedObjectiveError(
            f"objective undefined for an infeasible solution ({len(report.violations)} violations)"
        )
    return raw_objective(instance, solution)
