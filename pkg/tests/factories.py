"""
Hand-checked tiny instances used across the test suite.
"""

from core.instance import Instance, Variant

# depot 0, customers 1 and 2; 0-1: 2, 0-2: 3, 1-2: 2
TINY_TIMES = (
    (0, 2, 3),
    (2, 0, 2),
    (3, 2, 0),
)


def make_tiny_min_time(**overrides) -> Instance:
    """
    One truck, one drone, customer 1 drone-eligible (round trip 5).

    Truck alone: 7. Drone on 1 and truck 0-2-0: max(5, 6) = 6 (optimal).
    """
    fields = dict(
        name="tiny_mt",
        truck_count=1,
        drone_count=1,
        truck_time=TINY_TIMES,
        drone_eligible=(1,),
        drone_time=(5,),
        scale=1,
    )
    fields.update(overrides)
    return Instance(**fields)


def make_tiny_min_cost(**overrides) -> Instance:
    """
    Same graph with costs equal to times, drone cost 2 for customer 1,
    weights 4 and 3.

    Truck alone: cost 7, load 7. Drone on 1: 2 + 6 = 8.
    """
    fields = dict(
        name="tiny_mc",
        truck_count=1,
        drone_count=1,
        truck_time=TINY_TIMES,
        drone_eligible=(1,),
        drone_time=(5,),
        variant=Variant.MIN_COST,
        truck_cost=TINY_TIMES,
        drone_cost=(2,),
        weight=(0, 4, 3),
        truck_capacity=10,
        truck_time_limit=100,
        drone_time_limit=100,
        scale=1,
    )
    fields.update(overrides)
    return Instance(**fields)
