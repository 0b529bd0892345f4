"""
Per-vehicle quantities shared by the validator, the objective, the
heuristics and the oracle.
"""

from typing import Sequence

from core.instance import Instance


def tour_time(instance: Instance, tour: Sequence[int]) -> int:
    """Sum of truck travel times along consecutive nodes of a tour."""
    tt = instance.truck_time
    return sum(tt[a][b] for a, b in zip(tour, tour[1:]))


def tour_cost(instance: Instance, tour: Sequence[int]) -> int:
    tc = instance.truck_cost
    return sum(tc[a][b] for a, b in zip(tour, tour[1:]))


def tour_load(instance: Instance, tour: Sequence[int]) -> int:
    """Total parcel weight carried on a tour (depot visits weigh 0)."""
    return sum(instance.weight[v] for v in tour)


def mission_time(instance: Instance, missions: Sequence[int]) -> int:
    return sum(instance.drone_time_of(i) for i in missions)


def mission_cost(instance: Instance, missions: Sequence[int]) -> int:
    return sum(instance.drone_cost_of(i) for i in missions)
