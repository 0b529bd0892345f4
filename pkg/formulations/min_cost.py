"""
Min-cost formulations with truck capacity and truck/drone working-time
limits.

MC-3IDX bounds each truck layer directly; MC-2IDX carries load (beta) and
time (gamma) accumulators along the giant tour. Both minimise total truck
arc cost plus drone mission cost.
"""

import logging

from core.instance import DEPOT, Instance, Variant
from formulations.common import (
    add_coverage,
    add_drone_literals,
    add_giant_layer,
    add_truck_layer,
    arc_terms,
    drone_terms,
    require_variant,
)
from formulations.ir import (
    Circuit,
    ConstraintModel,
    DecodeKey,
    Implication,
    LinearEq,
    LinearLe,
    LinearTerm,
    ModelBuilder,
    MultipleCircuit,
    Objective,
    term,
)

logger = logging.getLogger(__name__)


def _add_drone_limits(builder, instance, drone_lits) -> None:
    times = dict(zip(instance.drone_eligible, instance.drone_time))
    for d in range(instance.drone_count):
        builder.add(LinearLe(
            drone_terms(drone_lits, d, times), instance.drone_time_limit, label=f"drone_time_limit[{d}]"
        ))


def _cost_objective(layers, drone_lits, instance) -> Objective:
    costs = dict(zip(instance.drone_eligible, instance.drone_cost))
    terms = []
    for layer in layers:
        terms.extend(arc_terms(layer, instance.truck_cost))
    for d in range(instance.drone_count):
        terms.extend(drone_terms(drone_lits, d, costs))
    return Objective.minimize_linear(terms)


def build_mc_3idx(instance: Instance, force_truck_use: bool = False) -> ConstraintModel:
    """Three-index min-cost model."""
    require_variant(instance, Variant.MIN_COST, "mc-3idx")
    builder = ModelBuilder("mc-3idx")
    nodes = tuple(instance.nodes)

    layers = [
        add_truck_layer(builder, instance, k, with_depot_loop=not force_truck_use)
        for k in range(instance.truck_count)
    ]
    drone_lits = add_drone_literals(builder, instance)

    for k, layer in enumerate(layers):
        builder.add(Circuit(nodes, layer, DEPOT, label=f"circuit[{k}]"))
    add_coverage(builder, instance, drone_lits, layers)
    for k, layer in enumerate(layers):
        builder.add(LinearLe(
            arc_terms(layer, instance.truck_time), instance.truck_time_limit, label=f"truck_time_limit[{k}]"
        ))
    _add_drone_limits(builder, instance, drone_lits)
    for k, layer in enumerate(layers):
        # visit indicator of j on truck k is the negated self-loop
        load = tuple(term(instance.weight[j], layer[(j, j)].negate()) for j in instance.customers)
        builder.add(LinearLe(load, instance.truck_capacity, label=f"capacity[{k}]"))

    model = builder.build(
        variant=Variant.MIN_COST,
        objective=_cost_objective(layers, drone_lits, instance),
        decode_key=DecodeKey("z"),
        node_count=instance.node_count,
        truck_count=instance.truck_count,
        drone_count=instance.drone_count,
        force_truck_use=force_truck_use,
        truck_arcs=tuple(layers),
        drone_literals=drone_lits,
    )
    logger.debug(f"Built {model!r} for {instance.name}")
    return model


def build_mc_2idx(instance: Instance, force_truck_use: bool = False) -> ConstraintModel:
    """Two-index min-cost model with load and time chains."""
    require_variant(instance, Variant.MIN_COST, "mc-2idx")
    builder = ModelBuilder("mc-2idx")
    nodes = tuple(instance.nodes)
    tt = instance.truck_time
    trucks = instance.truck_count

    arcs = add_giant_layer(builder, instance)
    drone_lits = add_drone_literals(builder, instance)
    beta = {i: builder.new_int(("beta", i), 0, instance.truck_capacity) for i in nodes}
    gamma = {i: builder.new_int(("gamma", i), 0, instance.truck_time_limit) for i in nodes}

    builder.add(MultipleCircuit(
        nodes, arcs, DEPOT,
        max_departures=trucks,
        min_departures=trucks if force_truck_use else 0,
        label="tours",
    ))
    add_coverage(builder, instance, drone_lits, [arcs])
    _add_drone_limits(builder, instance, drone_lits)

    builder.add(LinearEq((LinearTerm(1, beta[DEPOT]),), 0, label="beta[0]"))
    for (i, j), lit in arcs.items():
        if i == j or j == DEPOT:
            continue
        chain = LinearEq((LinearTerm(1, beta[j]), LinearTerm(-1, beta[i])), instance.weight[j])
        builder.add(Implication(lit, chain, label=f"load[{i},{j}]"))

    builder.add(LinearEq((LinearTerm(1, gamma[DEPOT]),), 0, label="gamma[0]"))
    for (i, j), lit in arcs.items():
        if i == j or j == DEPOT:
            continue
        chain = LinearEq((LinearTerm(1, gamma[j]), LinearTerm(-1, gamma[i])), tt[i][j])
        builder.add(Implication(lit, chain, label=f"arrival[{i},{j}]"))
    for i in instance.customers:
        limit = LinearLe((LinearTerm(1, gamma[i]),), instance.truck_time_limit - tt[i][DEPOT])
        builder.add(Implication(arcs[(i, DEPOT)], limit, label=f"return[{i}]"))

    model = builder.build(
        variant=Variant.MIN_COST,
        objective=_cost_objective([arcs], drone_lits, instance),
        decode_key=DecodeKey("y"),
        node_count=instance.node_count,
        truck_count=trucks,
        drone_count=instance.drone_count,
        force_truck_use=force_truck_use,
        truck_arcs=(arcs,),
        drone_literals=drone_lits,
        arrival_vars=gamma,
        load_vars=beta,
    )
    logger.debug(f"Built {model!r} for {instance.name}")
    return model
