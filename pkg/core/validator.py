"""
Independent feasibility validator.

Checks a Solution against an Instance and itemises every violated
constraint: customer coverage, drone eligibility, tour shape and, for
min-cost instances, truck capacity, truck working time and drone working
time. Every other module's tests use this validator as ground truth.

Usage:
    from core.validator import validate_solution

    report = validate_solution(instance, solution)
    if not report.feasible:
        print(report.format_summary())
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from core.errors import StructuralError
from core.instance import DEPOT, Instance
from core.measures import tour_load, tour_time
from core.solution import Solution


class ViolationKind(str, Enum):
    """Kinds of constraint violations."""
    COVERAGE = "Coverage"
    ELIGIBILITY = "Eligibility"
    CAPACITY = "Capacity"
    TRUCK_TIME_LIMIT = "TruckTimeLimit"
    DRONE_TIME_LIMIT = "DroneTimeLimit"
    TOUR_SHAPE = "TourShape"


class Fleet(str, Enum):
    TRUCK = "truck"
    DRONE = "drone"


@dataclass(frozen=True)
class Violation:
    """
    A single violated constraint.

    ``magnitude`` is expressed in the instance's fixed-point units for
    capacity/time findings and in customer counts otherwise.
    """
    kind: ViolationKind
    vehicle: Optional[int]
    detail: str
    magnitude: int = 1
    fleet: Optional[Fleet] = None

    def __repr__(self):
        where = f"{self.fleet.value} {self.vehicle}" if self.fleet is not None else "-"
        return f"Violation({self.kind.value}, {where}, {self.detail}, magnitude={self.magnitude})"


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of validate_solution; feasible iff there are no violations."""
    violations: Tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def by_kind(self, kind: ViolationKind) -> List[Violation]:
        """Get all violations of one kind."""
        return [v for v in self.violations if v.kind == kind]

    def format_summary(self) -> str:
        """Format the report as readable text."""
        lines = [
            "=" * 60,
            "FEASIBILITY REPORT",
            "=" * 60,
            f"Status: {'FEASIBLE' if self.feasible else 'INFEASIBLE'}",
            f"Violations: {len(self.violations)}",
        ]
        for kind in ViolationKind:
            found = self.by_kind(kind)
            if not found:
                continue
            lines.append("")
            lines.append(f"{kind.value}:")
            for v in found:
                where = f"{v.fleet.value} {v.vehicle}: " if v.fleet is not None else ""
                lines.append(f"  - {where}{v.detail} (magnitude {v.magnitude})")
        return "\n".join(lines)


def check_dimensions(instance: Instance, solution: Solution) -> None:
    """Raise StructuralError when the solution cannot be evaluated on the instance."""
    if len(solution.truck_tours) != instance.truck_count:
        raise StructuralError(
            f"solution has {len(solution.truck_tours)} truck tours, instance has {instance.truck_count} trucks"
        )
    if len(solution.drone_missions) != instance.drone_count:
        raise StructuralError(
            f"solution has {len(solution.drone_missions)} mission lists, instance has {instance.drone_count} drones"
        )
    size = instance.node_count
    for seq in (*solution.truck_tours, *solution.drone_missions):
        for v in seq:
            if not 0 <= v < size:
                raise StructuralError(f"node {v} does not exist (instance has nodes 0..{size - 1})")


def _tour_shape(tour: Tuple[int, ...], k: int) -> Tuple[List[int], List[Violation]]:
    """Customers carried by a non-empty tour plus its shape violations."""
    findings: List[Violation] = []
    if len(tour) < 3:
        findings.append(Violation(ViolationKind.TOUR_SHAPE, k, f"degenerate tour {tour}", 1, Fleet.TRUCK))
    if tour[0] != DEPOT or tour[-1] != DEPOT:
        findings.append(Violation(ViolationKind.TOUR_SHAPE, k, f"tour {tour} is not anchored at the depot", 1, Fleet.TRUCK))
    start = 1 if tour[0] == DEPOT else 0
    end = len(tour) - 1 if len(tour) > 1 and tour[-1] == DEPOT else len(tour)
    inner = list(tour[start:end])
    if DEPOT in inner:
        findings.append(Violation(ViolationKind.TOUR_SHAPE, k, "depot visited in the middle of the tour", 1, Fleet.TRUCK))
    customers = [v for v in inner if v != DEPOT]
    repeats = len(customers) - len(set(customers))
    if repeats:
        findings.append(Violation(ViolationKind.TOUR_SHAPE, k, "customer repeated within the tour", repeats, Fleet.TRUCK))
    return customers, findings


def validate_solution(instance: Instance, solution: Solution) -> FeasibilityReport:
    """
    Validate a solution against every constraint of the instance.

    Raises:
        StructuralError: fleet sizes differ or unknown node ids are used.
    """
    check_dimensions(instance, solution)
    violations: List[Violation] = []
    served: Counter = Counter()

    truck_customers: List[List[int]] = []
    for k, tour in enumerate(solution.truck_tours):
        if not tour:
            truck_customers.append([])
            continue
        customers, findings = _tour_shape(tour, k)
        violations.extend(findings)
        served.update(customers)
        truck_customers.append(customers)

    for d, missions in enumerate(solution.drone_missions):
        for i in missions:
            if i == DEPOT:
                violations.append(Violation(ViolationKind.TOUR_SHAPE, d, "depot listed as a drone mission", 1, Fleet.DRONE))
                continue
            served[i] += 1
            if not instance.is_drone_eligible(i):
                violations.append(
                    Violation(ViolationKind.ELIGIBILITY, d, f"customer {i} is not drone-eligible", 1, Fleet.DRONE)
                )

    for i in instance.customers:
        count = served.get(i, 0)
        if count != 1:
            violations.append(
                Violation(ViolationKind.COVERAGE, None, f"customer {i} served {count} times", abs(count - 1))
            )

    if instance.is_min_cost:
        violations.extend(_min_cost_violations(instance, solution, truck_customers))

    return FeasibilityReport(tuple(violations))


def _min_cost_violations(
    instance: Instance,
    solution: Solution,
    truck_customers: List[List[int]],
) -> List[Violation]:
    found: List[Violation] = []
    for k, tour in enumerate(solution.truck_tours):
        if not tour:
            continue
        load = tour_load(instance, truck_customers[k])
        if load > instance.truck_capacity:
            found.append(Violation(
                ViolationKind.CAPACITY, k,
                f"load {load} exceeds capacity {instance.truck_capacity}",
                load - instance.truck_capacity, Fleet.TRUCK,
            ))
        duration = tour_time(instance, tour)
        if duration > instance.truck_time_limit:
            found.append(Violation(
                ViolationKind.TRUCK_TIME_LIMIT, k,
                f"tour time {duration} exceeds limit {instance.truck_time_limit}",
                duration - instance.truck_time_limit, Fleet.TRUCK,
            ))
    for d, missions in enumerate(solution.drone_missions):
        duration = sum(instance.drone_time_of(i) for i in missions if instance.is_drone_eligible(i))
        if duration > instance.drone_time_limit:
            found.append(Violation(
                ViolationKind.DRONE_TIME_LIMIT, d,
                f"drone time {duration} exceeds limit {instance.drone_time_limit}",
                duration - instance.drone_time_limit, Fleet.DRONE,
            ))
    return found
