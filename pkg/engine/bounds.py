"""
Admissible lower bounds on the objective of any completion of a search state.

Min-time: the larger of the makespan variable's lower bound, the cheapest
way to serve each single customer (drone round trip, or cheapest arc in plus
cheapest arc out), the remaining work spread over all vehicles and, for the
giant-tour model, each truck-served customer's earliest arrival plus its
cheapest way out.

Min-cost: the larger of the committed objective and the cheapest way to
serve every customer (drone cost, or cheapest incoming arc cost) plus the
cost of the arcs already selected into the depot.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from core.instance import DEPOT, Instance
from engine.propagators import PropagationEngine
from engine.state import DomainStore
from formulations.ir import ConstraintModel, Literal, ObjectiveKind

INFEASIBLE = math.inf


@dataclass
class CustomerOptions:
    customer: int
    drone_literals: List[Literal] = field(default_factory=list)
    drone_value: int = 0
    loops: List[Literal] = field(default_factory=list)
    # (literal, layer, weight) for non-loop arcs into / out of the customer
    in_arcs: List[Tuple[Literal, int, int]] = field(default_factory=list)
    out_arcs: List[Tuple[Literal, int, int]] = field(default_factory=list)
    arrival_var: Optional[int] = None


class BoundContext:
    """Per-model tables used by lower_bound."""

    def __init__(self, model: ConstraintModel, instance: Instance):
        self.model = model
        self.min_time = model.objective.kind is ObjectiveKind.MINIMIZE_VAR
        self.vehicles = instance.truck_count + instance.drone_count
        weights = instance.truck_time if self.min_time else instance.truck_cost
        drone_values = instance.drone_time if self.min_time else instance.drone_cost

        self.customers: List[CustomerOptions] = []
        by_node = {}
        for i in instance.customers:
            opt = CustomerOptions(i, arrival_var=model.arrival_vars.get(i) if self.min_time else None)
            by_node[i] = opt
            self.customers.append(opt)
        for value, i in zip(drone_values, instance.drone_eligible):
            by_node[i].drone_value = value
        for (d, i), lit in sorted(model.drone_literals.items()):
            by_node[i].drone_literals.append(lit)

        self.depot_in: List[Tuple[Literal, int]] = []
        for k, layer in enumerate(model.truck_arcs):
            for (i, j), lit in layer.items():
                if i == j:
                    if i != DEPOT:
                        by_node[i].loops.append(lit)
                    continue
                if j != DEPOT:
                    by_node[j].in_arcs.append((lit, k, weights[i][j]))
                else:
                    self.depot_in.append((lit, weights[i][j]))
                if i != DEPOT:
                    by_node[i].out_arcs.append((lit, k, weights[i][j]))

        if model.objective.kind is ObjectiveKind.MINIMIZE_LINEAR:
            self.objective_terms = model.objective.terms
        else:
            self.objective_terms = ()


def _cheapest(arcs, open_layers, store: DomainStore) -> float:
    return min(
        (w for lit, k, w in arcs if k in open_layers and not store.is_false(lit)),
        default=INFEASIBLE,
    )


def lower_bound(context: BoundContext, store: DomainStore) -> float:
    """Admissible bound of the state; INFEASIBLE when some customer has no way to be served."""
    best = 0
    total = 0
    for opt in context.customers:
        drone = opt.drone_value if any(not store.is_false(l) for l in opt.drone_literals) else INFEASIBLE
        open_layers = {k for k, loop in enumerate(opt.loops) if not store.is_true(loop)}
        cheapest_in = _cheapest(opt.in_arcs, open_layers, store)
        if context.min_time:
            cheapest_out = _cheapest(opt.out_arcs, open_layers, store)
            single = min(drone, cheapest_in + cheapest_out)
            if single == INFEASIBLE:
                return INFEASIBLE
            best = max(best, single)
            if opt.arrival_var is not None and store.is_false(opt.loops[0]):
                best = max(best, store.lo[opt.arrival_var] + cheapest_out)
        share = min(drone, cheapest_in)
        if share == INFEASIBLE:
            return INFEASIBLE
        total += share

    if context.min_time:
        best = max(best, store.lo[context.model.objective.target], -(-total // context.vehicles))
        return best

    committed = 0
    for coef, var, negated in context.objective_terms:
        committed += coef * ((1 - store.hi[var]) if negated else store.lo[var])
    closing = sum(w for lit, w in context.depot_in if store.is_true(lit))
    return max(committed, total + closing)


def root_lower_bound(model: ConstraintModel, instance: Instance) -> float:
    """Bound of the root state after initial propagation (INFEASIBLE on conflict)."""
    store = DomainStore.for_model(model)
    if not PropagationEngine(model).propagate(store, everything=True):
        return INFEASIBLE
    return lower_bound(BoundContext(model, instance), store)
