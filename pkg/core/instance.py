"""
Instance data model for the parallel drone scheduling vehicle routing problems.

An Instance holds the graph (depot 0, customers 1..n), the truck and drone
fleets, truck travel times between every ordered node pair, drone round-trip
times for drone-eligible customers and, for the min-cost variant, costs,
parcel weights, truck capacity and working-time limits.

All numeric fields are integers in fixed-point units: source values are
multiplied by ``scale`` (default 100) before they are stored.

Usage:
    from core.instance import Instance, Variant

    instance = Instance(
        truck_count=1,
        drone_count=1,
        truck_time=((0, 3), (3, 0)),
        drone_eligible=(1,),
        drone_time=(6,),
    )
    print(instance.n, instance.customers)
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

from core.errors import InstanceError

DEPOT = 0
DEFAULT_SCALE = 100

Matrix = Tuple[Tuple[int, ...], ...]


class Variant(str, Enum):
    """Problem variant."""
    MIN_TIME = "MIN_TIME"
    MIN_COST = "MIN_COST"


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class Instance:
    """
    Immutable problem instance.

    ``drone_time`` and ``drone_cost`` are aligned with the ascending
    ``drone_eligible`` tuple. ``weight`` has one entry per node with
    ``weight[0] == 0``.
    """

    truck_count: int
    drone_count: int
    truck_time: Matrix
    drone_eligible: Tuple[int, ...] = ()
    drone_time: Tuple[int, ...] = ()
    variant: Variant = Variant.MIN_TIME

    # Min-cost block
    truck_cost: Optional[Matrix] = None
    drone_cost: Optional[Tuple[int, ...]] = None
    weight: Optional[Tuple[int, ...]] = None
    truck_capacity: Optional[int] = None
    truck_time_limit: Optional[int] = None
    drone_time_limit: Optional[int] = None

    # Metadata
    name: str = "instance"
    scale: int = DEFAULT_SCALE
    provenance: Tuple[Tuple[str, str], ...] = field(default=(), compare=True)

    def __post_init__(self):
        # Normalise containers so equality and immutability hold whatever the caller passed
        object.__setattr__(self, "truck_time", _as_matrix(self.truck_time))
        object.__setattr__(self, "variant", Variant(self.variant))
        eligible = tuple(int(i) for i in self.drone_eligible)
        times = tuple(int(t) for t in self.drone_time)
        if len(eligible) != len(times):
            raise InstanceError(
                f"drone_time has {len(times)} entries for {len(eligible)} drone-eligible customers"
            )
        order = sorted(range(len(eligible)), key=lambda k: eligible[k])
        object.__setattr__(self, "drone_eligible", tuple(eligible[k] for k in order))
        object.__setattr__(self, "drone_time", tuple(times[k] for k in order))
        if self.truck_cost is not None:
            object.__setattr__(self, "truck_cost", _as_matrix(self.truck_cost))
        if self.drone_cost is not None:
            costs = tuple(int(c) for c in self.drone_cost)
            if len(costs) != len(eligible):
                raise InstanceError(
                    f"drone_cost has {len(costs)} entries for {len(eligible)} drone-eligible customers"
                )
            object.__setattr__(self, "drone_cost", tuple(costs[k] for k in order))
        if self.weight is not None:
            object.__setattr__(self, "weight", tuple(int(w) for w in self.weight))
        object.__setattr__(self, "provenance", tuple((str(k), str(v)) for k, v in self.provenance))
        self._check_invariants()

    def _check_invariants(self) -> None:
        size = len(self.truck_time)
        if size < 2:
            raise InstanceError("an instance needs the depot and at least one customer")
        if self.truck_count < 1:
            raise InstanceError(f"truck_count must be >= 1, got {self.truck_count}")
        if self.drone_count < 0:
            raise InstanceError(f"drone_count must be >= 0, got {self.drone_count}")
        if self.scale < 1:
            raise InstanceError(f"scale must be a positive integer, got {self.scale}")
        _check_square("truck_time", self.truck_time, size)

        if len(set(self.drone_eligible)) != len(self.drone_eligible):
            raise InstanceError("drone_eligible contains duplicates")
        for i in self.drone_eligible:
            if not 1 <= i < size:
                raise InstanceError(f"drone-eligible node {i} is not a customer")
        if any(t < 0 for t in self.drone_time):
            raise InstanceError("drone_time values must be nonnegative")

        cost_fields = {
            "truck_cost": self.truck_cost,
            "drone_cost": self.drone_cost,
            "weight": self.weight,
            "truck_capacity": self.truck_capacity,
            "truck_time_limit": self.truck_time_limit,
            "drone_time_limit": self.drone_time_limit,
        }
        if self.variant is Variant.MIN_TIME:
            present = [k for k, v in cost_fields.items() if v is not None]
            if present:
                raise InstanceError(f"MIN_TIME instances carry no min-cost fields, got {present}")
            return

        missing = [k for k, v in cost_fields.items() if v is None]
        if missing:
            raise InstanceError(f"MIN_COST instance is missing {missing}")
        _check_square("truck_cost", self.truck_cost, size)
        if any(c < 0 for c in self.drone_cost):
            raise InstanceError("drone_cost values must be nonnegative")
        if len(self.weight) != size:
            raise InstanceError(f"weight must have {size} entries (depot included), got {len(self.weight)}")
        if self.weight[DEPOT] != 0:
            raise InstanceError("the depot carries no parcel: weight[0] must be 0")
        if any(w < 0 for w in self.weight):
            raise InstanceError("weights must be nonnegative")
        for key in ("truck_capacity", "truck_time_limit", "drone_time_limit"):
            if cost_fields[key] < 0:
                raise InstanceError(f"{key} must be nonnegative")

    # ------------------------------------------------------------------
    # Convenience accessors
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        """Number of customers."""
        return len(self.truck_time) - 1

    @property
    def node_count(self) -> int:
        return len(self.truck_time)

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    @property
    def customers(self) -> range:
        return range(1, self.node_count)

    @property
    def is_min_cost(self) -> bool:
        return self.variant is Variant.MIN_COST

    @cached_property
    def _drone_time_map(self) -> Dict[int, int]:
        return dict(zip(self.drone_eligible, self.drone_time))

    @cached_property
    def _drone_cost_map(self) -> Dict[int, int]:
        return dict(zip(self.drone_eligible, self.drone_cost or ()))

    def is_drone_eligible(self, customer: int) -> bool:
        return customer in self._drone_time_map

    def drone_time_of(self, customer: int) -> int:
        """Round-trip drone time for an eligible customer."""
        return self._drone_time_map[customer]

    def drone_cost_of(self, customer: int) -> int:
        """Drone mission cost for an eligible customer (min-cost only)."""
        return self._drone_cost_map[customer]

    def arc_time(self, i: int, j: int) -> int:
        return self.truck_time[i][j]

    def arc_cost(self, i: int, j: int) -> int:
        return self.truck_cost[i][j]

    def is_symmetric(self) -> bool:
        """True when truck times (and costs, if present) are symmetric."""
        matrices = [self.truck_time] + ([self.truck_cost] if self.truck_cost is not None else [])
        return all(
            m[i][j] == m[j][i]
            for m in matrices
            for i in self.nodes
            for j in self.nodes
        )

    def __repr__(self):
        return (
            f"Instance(name={self.name!r}, variant={self.variant.value}, n={self.n}, "
            f"trucks={self.truck_count}, drones={self.drone_count}, eligible={len(self.drone_eligible)})"
        )


def _check_square(name: str, matrix: Matrix, size: int) -> None:
    if len(matrix) != size:
        raise InstanceError(f"{name} must have {size} rows, got {len(matrix)}")
    for i, row in enumerate(matrix):
        if len(row) != size:
            raise InstanceError(f"{name} row {i} must have {size} entries, got {len(row)}")
        if row[i] != 0:
            raise InstanceError(f"{name}[{i}][{i}] must be 0")
        if any(v < 0 for v in row):
            raise InstanceError(f"{name} row {i} contains negative values")
