"""
Greedy construction of an initial solution.

Customers are taken in decreasing order of their truck round trip from the
depot and each is placed on the vehicle that keeps the objective smallest:

- min-time: the choice minimising the new makespan, then the added work;
  trucks use cheapest insertion;
- min-cost: the cheapest insertion among trucks and drones that keeps
  capacity and both working-time limits.

A min-cost construction can fail; that is reported as None and is not a
proof of infeasibility.

Usage:
    from heuristics.construction import construct_initial

    solution = construct_initial(instance)
    if solution is None:
        print("no incumbent")
"""

import logging
from typing import List, Optional, Sequence, Tuple

from core.instance import DEPOT, Instance
from core.objective import raw_objective
from core.solution import Solution
from core.validator import validate_solution

logger = logging.getLogger(__name__)

Routes = List[List[int]]


def cheapest_insertion(matrix, route: Sequence[int], customer: int) -> Tuple[int, int]:
    """(added weight, position) of the cheapest place for ``customer`` in a depot-anchored route."""
    path = [DEPOT, *route, DEPOT]
    best = None
    for p in range(len(path) - 1):
        a, b = path[p], path[p + 1]
        delta = matrix[a][customer] + matrix[customer][b] - matrix[a][b]
        if best is None or delta < best[0]:
            best = (delta, p)
    return best


def route_time(instance: Instance, route: Sequence[int]) -> int:
    tt = instance.truck_time
    path = [DEPOT, *route, DEPOT] if route else []
    return sum(tt[a][b] for a, b in zip(path, path[1:]))


def construction_order(instance: Instance, customers: Sequence[int]) -> List[int]:
    tt = instance.truck_time
    return sorted(customers, key=lambda i: (-(tt[DEPOT][i] + tt[i][DEPOT]), i))


def _insert_min_time(instance: Instance, routes: Routes, missions: Routes, customer: int) -> None:
    tt = instance.truck_time
    truck_times = [route_time(instance, r) for r in routes]
    drone_times = [sum(instance.drone_time_of(i) for i in m) for m in missions]
    makespan = max(truck_times + drone_times, default=0)

    options = []
    for k, route in enumerate(routes):
        delta, pos = cheapest_insertion(tt, route, customer)
        new_time = truck_times[k] + delta
        options.append((max(makespan, new_time), delta, 0, k, pos))
    if instance.is_drone_eligible(customer):
        trip = instance.drone_time_of(customer)
        for d in range(len(missions)):
            options.append((max(makespan, drone_times[d] + trip), trip, 1, d, 0))

    _, _, fleet, index, pos = min(options)
    if fleet == 0:
        routes[index].insert(pos, customer)
    else:
        missions[index].append(customer)


def _min_cost_options(instance: Instance, routes: Routes, missions: Routes, customer: int, strict: bool):
    tt, tc = instance.truck_time, instance.truck_cost
    weight = instance.weight[customer]
    options = []
    for k, route in enumerate(routes):
        load = sum(instance.weight[i] for i in route) + weight
        if strict and load > instance.truck_capacity:
            continue
        base_time = route_time(instance, route)
        path = [DEPOT, *route, DEPOT]
        for p in range(len(path) - 1):
            a, b = path[p], path[p + 1]
            added_time = tt[a][customer] + tt[customer][b] - tt[a][b]
            if strict and base_time + added_time > instance.truck_time_limit:
                continue
            added_cost = tc[a][customer] + tc[customer][b] - tc[a][b]
            options.append((added_cost, added_time, 0, k, p))
    if instance.is_drone_eligible(customer):
        trip = instance.drone_time_of(customer)
        for d, m in enumerate(missions):
            used = sum(instance.drone_time_of(i) for i in m)
            if strict and used + trip > instance.drone_time_limit:
                continue
            options.append((instance.drone_cost_of(customer), trip, 1, d, 0))
    return options


def insert_customers(
    instance: Instance,
    routes: Routes,
    missions: Routes,
    customers: Sequence[int],
    strict: bool = True,
) -> bool:
    """
    Insert customers greedily into the partial plan (mutated in place).

    With ``strict`` a min-cost insertion that would break a limit is never
    made and False is returned when some customer has no admissible place;
    otherwise the cheapest place is taken regardless of limits.
    """
    for customer in customers:
        if not instance.is_min_cost:
            _insert_min_time(instance, routes, missions, customer)
            continue
        options = _min_cost_options(instance, routes, missions, customer, strict)
        if not options:
            return False
        _, _, fleet, index, pos = min(options)
        if fleet == 0:
            routes[index].insert(pos, customer)
        else:
            missions[index].append(customer)
    return True


def construct_initial(instance: Instance) -> Optional[Solution]:
    """Greedy feasible solution, or None when construction fails."""
    routes: Routes = [[] for _ in range(instance.truck_count)]
    missions: Routes = [[] for _ in range(instance.drone_count)]
    if not insert_customers(instance, routes, missions, construction_order(instance, instance.customers)):
        logger.warning(f"Greedy construction found no feasible placement for {instance.name}")
        return None
    solution = Solution.from_routes(routes, [sorted(m) for m in missions])
    if not validate_solution(instance, solution).feasible:
        logger.warning(f"Greedy construction for {instance.name} produced an infeasible plan")
        return None
    logger.debug(f"Greedy construction for {instance.name}: {raw_objective(instance, solution)}")
    return solution
