"""
Building blocks shared by the four formulations: arc layers, drone
assignment literals, coverage constraints and domain bounds.
"""

from typing import Dict, List, Tuple

from core.errors import ModelBuildError
from core.instance import DEPOT, Instance, Variant
from formulations.ir import Arc, ExactlyOne, Literal, LinearTerm, ModelBuilder, term


def require_variant(instance: Instance, variant: Variant, model_name: str) -> None:
    """Builder precondition: the instance variant fits the model."""
    if instance.variant is not variant:
        raise ModelBuildError(
            f"{model_name} needs a {variant.value} instance, got {instance.variant.value}"
        )
    for i in instance.drone_eligible:
        if not 1 <= i <= instance.n:
            raise ModelBuildError(f"drone-eligible node {i} is not a customer of {instance.name}")
    if variant is Variant.MIN_COST:
        missing = [
            name for name in (
                "truck_cost", "drone_cost", "weight",
                "truck_capacity", "truck_time_limit", "drone_time_limit",
            )
            if getattr(instance, name) is None
        ]
        if missing:
            raise ModelBuildError(f"{model_name} needs min-cost fields {missing}")


def time_horizon(instance: Instance) -> int:
    """
    Conservative upper bound on any vehicle time.

    Every node is left at most once per tour, so a tour never exceeds the sum
    of each node's longest outgoing arc; a drone never exceeds the sum of all
    round trips.
    """
    tt = instance.truck_time
    return sum(max(row) for row in tt) + sum(instance.drone_time)


def add_drone_literals(builder: ModelBuilder, instance: Instance) -> Dict[Tuple[int, int], Literal]:
    """x[d][i] for every drone d and drone-eligible customer i."""
    return {
        (d, i): builder.new_bool(("x", d, i))
        for d in range(instance.drone_count)
        for i in instance.drone_eligible
    }


def add_truck_layer(
    builder: ModelBuilder,
    instance: Instance,
    k: int,
    with_depot_loop: bool,
) -> Dict[Arc, Literal]:
    """z[k][i][j] over every ordered pair, self-loops included (depot loop optional)."""
    layer: Dict[Arc, Literal] = {}
    for i in instance.nodes:
        for j in instance.nodes:
            if i == j == DEPOT and not with_depot_loop:
                continue
            layer[(i, j)] = builder.new_bool(("z", k, i, j))
    return layer


def add_giant_layer(builder: ModelBuilder, instance: Instance) -> Dict[Arc, Literal]:
    """y[i][j] over every ordered pair except the depot self-loop."""
    return {
        (i, j): builder.new_bool(("y", i, j))
        for i in instance.nodes
        for j in instance.nodes
        if not i == j == DEPOT
    }


def add_coverage(
    builder: ModelBuilder,
    instance: Instance,
    drone_lits: Dict[Tuple[int, int], Literal],
    layers: List[Dict[Arc, Literal]],
) -> None:
    """
    One ExactlyOne per customer over the drone literals and the truck visit
    indicators; a truck visits i when its self-loop on i is not selected.
    """
    for i in instance.customers:
        literals = [drone_lits[(d, i)] for d in range(instance.drone_count) if (d, i) in drone_lits]
        literals.extend(layer[(i, i)].negate() for layer in layers)
        builder.add(ExactlyOne(tuple(literals), label=f"coverage[{i}]"))


def arc_terms(layer: Dict[Arc, Literal], weights) -> Tuple[LinearTerm, ...]:
    """Linear terms weights[i][j] * arc over the non-loop arcs of a layer."""
    return tuple(term(weights[i][j], lit) for (i, j), lit in layer.items() if i != j)


def drone_terms(
    drone_lits: Dict[Tuple[int, int], Literal],
    d: int,
    values: Dict[int, int],
) -> Tuple[LinearTerm, ...]:
    return tuple(term(values[i], lit) for (dd, i), lit in drone_lits.items() if dd == d)
