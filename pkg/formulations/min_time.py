"""
Min-time (makespan) formulations.

- MT-3IDX: one arc layer z[k] per truck, each closed by a Circuit.
- MT-2IDX: a single giant arc layer y closed by a MultipleCircuit, with
  arrival-time chains gamma splitting the tours.

Both minimise alpha, bounded below by every truck tour time and every
drone's summed round trips.

Usage:
    from formulations.min_time import build_mt_3idx

    model = build_mt_3idx(instance)
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
    time_horizon,
)
from formulations.ir import (
    Circuit,
    ConstraintModel,
    DecodeKey,
    Implication,
    LinearEq,
    LinearTerm,
    MaxBound,
    ModelBuilder,
    MultipleCircuit,
    Objective,
)

logger = logging.getLogger(__name__)


def _add_drone_makespan(builder, instance, drone_lits, alpha) -> None:
    times = dict(zip(instance.drone_eligible, instance.drone_time))
    for d in range(instance.drone_count):
        builder.add(MaxBound(alpha, drone_terms(drone_lits, d, times), label=f"drone_makespan[{d}]"))


def build_mt_3idx(instance: Instance, force_truck_use: bool = False) -> ConstraintModel:
    """Three-index min-time model (per-truck arc layers)."""
    require_variant(instance, Variant.MIN_TIME, "mt-3idx")
    builder = ModelBuilder("mt-3idx")
    nodes = tuple(instance.nodes)

    layers = [
        add_truck_layer(builder, instance, k, with_depot_loop=not force_truck_use)
        for k in range(instance.truck_count)
    ]
    drone_lits = add_drone_literals(builder, instance)
    alpha = builder.new_int(("alpha",), 0, time_horizon(instance))

    for k, layer in enumerate(layers):
        builder.add(Circuit(nodes, layer, DEPOT, label=f"circuit[{k}]"))
    add_coverage(builder, instance, drone_lits, layers)
    for k, layer in enumerate(layers):
        builder.add(MaxBound(alpha, arc_terms(layer, instance.truck_time), label=f"truck_makespan[{k}]"))
    _add_drone_makespan(builder, instance, drone_lits, alpha)

    model = builder.build(
        variant=Variant.MIN_TIME,
        objective=Objective.minimize_var(alpha),
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


def build_mt_2idx(instance: Instance, force_truck_use: bool = False) -> ConstraintModel:
    """Two-index min-time model (giant tour with arrival times)."""
    require_variant(instance, Variant.MIN_TIME, "mt-2idx")
    builder = ModelBuilder("mt-2idx")
    nodes = tuple(instance.nodes)
    horizon = time_horizon(instance)
    tt = instance.truck_time
    trucks = instance.truck_count

    arcs = add_giant_layer(builder, instance)
    drone_lits = add_drone_literals(builder, instance)
    gamma = {i: builder.new_int(("gamma", i), 0, horizon) for i in nodes}
    alpha = builder.new_int(("alpha",), 0, horizon)

    builder.add(MultipleCircuit(
        nodes, arcs, DEPOT,
        max_departures=trucks,
        min_departures=trucks if force_truck_use else 0,
        label="tours",
    ))
    add_coverage(builder, instance, drone_lits, [arcs])
    builder.add(LinearEq((LinearTerm(1, gamma[DEPOT]),), 0, label="gamma[0]"))
    for (i, j), lit in arcs.items():
        if i == j or j == DEPOT:
            continue
        chain = LinearEq((LinearTerm(1, gamma[j]), LinearTerm(-1, gamma[i])), tt[i][j])
        builder.add(Implication(lit, chain, label=f"arrival[{i},{j}]"))
    for i in instance.customers:
        closing = MaxBound(alpha, (LinearTerm(1, gamma[i]),), constant=tt[i][DEPOT])
        builder.add(Implication(arcs[(i, DEPOT)], closing, label=f"return[{i}]"))
    _add_drone_makespan(builder, instance, drone_lits, alpha)

    model = builder.build(
        variant=Variant.MIN_TIME,
        objective=Objective.minimize_var(alpha),
        decode_key=DecodeKey("y"),
        node_count=instance.node_count,
        truck_count=trucks,
        drone_count=instance.drone_count,
        force_truck_use=force_truck_use,
        truck_arcs=(arcs,),
        drone_literals=drone_lits,
        arrival_vars=gamma,
    )
    logger.debug(f"Built {model!r} for {instance.name}")
    return model
