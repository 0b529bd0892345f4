"""
Exhaustive solver for tiny instances.

Enumerates every split of the customers into truck groups and drone groups
(only drone-eligible customers on drones) up to vehicle relabelling, and
every order of each truck group, so each canonical solution is produced
once. Idle trucks are allowed. Used as ground truth by the engine,
formulation and bound tests.

Usage:
    from oracle.brute_force import brute_force

    result = brute_force(instance)
    print(result.optimum, len(result.witnesses))
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from core.errors import OracleGuardError
from core.instance import Instance
from core.objective import raw_objective
from core.solution import Solution, canonicalize_solution
from core.validator import validate_solution

logger = logging.getLogger(__name__)

MAX_CUSTOMERS = 9
MAX_TRUCKS = 3
MAX_DRONES = 3
MAX_WITNESSES = 100


@dataclass(frozen=True)
class OracleResult:
    """``optimum`` is None when the instance is infeasible."""
    optimum: Optional[int]
    witnesses: Tuple[Solution, ...] = field(default_factory=tuple)
    feasible_count: int = 0

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


def check_guard(instance: Instance) -> None:
    if instance.n > MAX_CUSTOMERS or instance.truck_count > MAX_TRUCKS or instance.drone_count > MAX_DRONES:
        raise OracleGuardError(
            f"oracle limited to n <= {MAX_CUSTOMERS}, trucks <= {MAX_TRUCKS}, drones <= {MAX_DRONES}; "
            f"got n={instance.n}, trucks={instance.truck_count}, drones={instance.drone_count}"
        )


def _groupings(instance: Instance) -> Iterator[Tuple[List[List[int]], List[List[int]]]]:
    """
    Every split of the customers into unlabelled truck groups and unlabelled
    drone groups, each exactly once. A customer joins an open group of its
    fleet or opens the next one while the fleet has vehicles left.
    """
    customers = list(instance.customers)
    truck_groups: List[List[int]] = []
    drone_groups: List[List[int]] = []

    def place(k: int):
        if k == len(customers):
            yield [list(g) for g in truck_groups], [list(g) for g in drone_groups]
            return
        customer = customers[k]
        fleets = [(truck_groups, instance.truck_count)]
        if instance.is_drone_eligible(customer):
            fleets.append((drone_groups, instance.drone_count))
        for groups, size in fleets:
            for group in groups:
                group.append(customer)
                yield from place(k + 1)
                group.pop()
            if len(groups) < size:
                groups.append([customer])
                yield from place(k + 1)
                groups.pop()

    yield from place(0)


def _candidates(instance: Instance) -> Iterator[Solution]:
    """Canonical solutions, each produced once."""
    trucks, drones = instance.truck_count, instance.drone_count
    for truck_groups, drone_groups in _groupings(instance):
        missions = [sorted(g) for g in drone_groups] + [[]] * (drones - len(drone_groups))
        idle = [()] * (trucks - len(truck_groups))
        for routes in itertools.product(*(itertools.permutations(g) for g in truck_groups)):
            yield canonicalize_solution(Solution.from_routes(list(routes) + idle, missions))


def enumerate_feasible(instance: Instance) -> Iterator[Tuple[Solution, int]]:
    """Distinct canonical feasible solutions with their objective values."""
    check_guard(instance)
    for candidate in _candidates(instance):
        if validate_solution(instance, candidate).feasible:
            yield candidate, raw_objective(instance, candidate)


def brute_force(instance: Instance) -> OracleResult:
    """Exact optimum and up to MAX_WITNESSES optimal canonical solutions."""
    best: Optional[int] = None
    witnesses: List[Solution] = []
    count = 0
    for solution, value in enumerate_feasible(instance):
        count += 1
        if best is None or value < best:
            best, witnesses = value, [solution]
        elif value == best and len(witnesses) < MAX_WITNESSES:
            witnesses.append(solution)
    logger.debug(f"Oracle on {instance.name}: optimum={best} over {count} feasible solutions")
    return OracleResult(best, tuple(sorted(witnesses, key=repr)), count)


def count_feasible(instance: Instance) -> int:
    """Number of distinct canonical feasible solutions."""
    return sum(1 for _ in enumerate_feasible(instance))
