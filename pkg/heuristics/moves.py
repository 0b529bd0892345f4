"""
Neighbourhood moves over solutions.

A move names the customers and vehicles it touches; apply_move returns a
new, structurally valid Solution. Moves never place a customer on a drone
unless it is drone-eligible, but they may break min-cost limits: callers
validate before accepting.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Tuple

from core.instance import Instance
from core.solution import Solution
from heuristics.construction import construction_order, insert_customers


class MoveKind(str, Enum):
    RELOCATE = "RelocateCustomer"
    SWAP = "SwapCustomers"
    TWO_OPT = "TwoOptWithinTour"
    TRUCK_TO_DRONE = "TruckToDrone"
    DRONE_TO_TRUCK = "DroneToTruck"
    RUIN_RECREATE = "RuinRecreate"


@dataclass(frozen=True)
class NeighborhoodMove:
    """
    A neighbourhood move.

    - RELOCATE: move ``customers[0]`` to truck ``trucks[0]`` at route
      position ``positions[0]`` (positions count customers, depot excluded,
      after removal), or to drone ``drones[0]``.
    - SWAP: exchange the places of ``customers[0]`` and ``customers[1]``.
    - TWO_OPT: reverse route positions ``positions[0]..positions[1]`` of truck ``trucks[0]``.
    - TRUCK_TO_DRONE: move ``customers[0]`` from its truck to drone ``drones[0]``.
    - DRONE_TO_TRUCK: move ``customers[0]`` to truck ``trucks[0]`` at ``positions[0]``.
    - RUIN_RECREATE: remove ``customers`` and reinsert them greedily.
    """

    kind: MoveKind
    customers: Tuple[int, ...] = ()
    trucks: Tuple[int, ...] = ()
    drones: Tuple[int, ...] = ()
    positions: Tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.customers)


class _Plan:
    """Mutable copy of a solution: routes without depot markers plus mission lists."""

    def __init__(self, solution: Solution):
        self.routes: List[List[int]] = solution.routes()
        self.missions: List[List[int]] = [list(m) for m in solution.drone_missions]

    def locate(self, customer: int) -> Tuple[str, int, int]:
        for k, route in enumerate(self.routes):
            if customer in route:
                return "truck", k, route.index(customer)
        for d, m in enumerate(self.missions):
            if customer in m:
                return "drone", d, m.index(customer)
        raise ValueError(f"customer {customer} is not served")

    def remove(self, customer: int) -> None:
        fleet, index, pos = self.locate(customer)
        (self.routes if fleet == "truck" else self.missions)[index].pop(pos)

    def to_solution(self) -> Solution:
        return Solution.from_routes(self.routes, [sorted(m) for m in self.missions])


def apply_move(instance: Instance, solution: Solution, move: NeighborhoodMove) -> Solution:
    plan = _Plan(solution)
    kind = move.kind

    if kind is MoveKind.RELOCATE or kind is MoveKind.DRONE_TO_TRUCK or kind is MoveKind.TRUCK_TO_DRONE:
        customer = move.customers[0]
        plan.remove(customer)
        if move.drones:
            plan.missions[move.drones[0]].append(customer)
        else:
            plan.routes[move.trucks[0]].insert(move.positions[0], customer)

    elif kind is MoveKind.SWAP:
        a, b = move.customers
        fa, ia, pa = plan.locate(a)
        fb, ib, pb = plan.locate(b)
        seq_a = (plan.routes if fa == "truck" else plan.missions)[ia]
        seq_b = (plan.routes if fb == "truck" else plan.missions)[ib]
        seq_a[pa], seq_b[pb] = b, a

    elif kind is MoveKind.TWO_OPT:
        route = plan.routes[move.trucks[0]]
        i, j = move.positions
        route[i:j + 1] = reversed(route[i:j + 1])

    elif kind is MoveKind.RUIN_RECREATE:
        for customer in move.customers:
            plan.remove(customer)
        order = construction_order(instance, move.customers)
        snapshot = ([list(r) for r in plan.routes], [list(m) for m in plan.missions])
        if not insert_customers(instance, plan.routes, plan.missions, order, strict=True):
            plan.routes, plan.missions = snapshot
            insert_customers(instance, plan.routes, plan.missions, order, strict=False)

    return plan.to_solution()


def neighborhood(instance: Instance, solution: Solution) -> Iterator[NeighborhoodMove]:
    """Every relocate, swap, 2-opt and truck/drone exchange move of a solution."""
    routes = solution.routes()
    missions = [list(m) for m in solution.drone_missions]
    drones = range(len(missions))

    for k, route in enumerate(routes):
        for p, c in enumerate(route):
            for k2, other in enumerate(routes):
                slots = len(other) if k2 != k else len(other) - 1
                for q in range(slots + 1):
                    if k2 == k and q == p:
                        continue
                    yield NeighborhoodMove(MoveKind.RELOCATE, (c,), trucks=(k2,), positions=(q,))
            if instance.is_drone_eligible(c):
                for d in drones:
                    yield NeighborhoodMove(MoveKind.TRUCK_TO_DRONE, (c,), drones=(d,))
        for i in range(len(route) - 1):
            for j in range(i + 1, len(route)):
                yield NeighborhoodMove(MoveKind.TWO_OPT, trucks=(k,), positions=(i, j))

    for d, m in enumerate(missions):
        for c in m:
            for d2 in drones:
                if d2 != d:
                    yield NeighborhoodMove(MoveKind.RELOCATE, (c,), drones=(d2,))
            for k, route in enumerate(routes):
                for q in range(len(route) + 1):
                    yield NeighborhoodMove(MoveKind.DRONE_TO_TRUCK, (c,), trucks=(k,), positions=(q,))

    placed = _placement(routes, missions)
    customers = sorted(placed)
    for x, a in enumerate(customers):
        for b in customers[x + 1:]:
            fa, ia = placed[a]
            fb, ib = placed[b]
            if fa == fb and ia == ib and fa == "drone":
                continue
            if fa == "drone" and not instance.is_drone_eligible(b):
                continue
            if fb == "drone" and not instance.is_drone_eligible(a):
                continue
            yield NeighborhoodMove(MoveKind.SWAP, (a, b))


def _placement(routes, missions) -> dict:
    placed = {}
    for k, route in enumerate(routes):
        for c in route:
            placed[c] = ("truck", k)
    for d, m in enumerate(missions):
        for c in m:
            placed[c] = ("drone", d)
    return placed


def ruin_move(customers, size: int, rng) -> Optional[NeighborhoodMove]:
    """RuinRecreate move over ``size`` customers drawn with a numpy Generator."""
    pool = sorted(customers)
    if not pool:
        return None
    size = min(size, len(pool))
    chosen = rng.choice(pool, size=size, replace=False)
    return NeighborhoodMove(MoveKind.RUIN_RECREATE, tuple(sorted(int(c) for c in chosen)))
