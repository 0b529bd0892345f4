"""
Tests for the admissible lower bounds.
"""

import numpy as np
import pytest

from engine.bounds import INFEASIBLE, BoundContext, lower_bound, root_lower_bound
from engine.propagators import PropagationEngine
from engine.state import DomainStore
from formulations.decode import encode_solution
from formulations.registry import build_model, models_for_variant
from instance_io.generators import random_suite
from oracle.brute_force import brute_force
from tests.factories import make_tiny_min_cost


@pytest.mark.parametrize("name", ["mt-3idx", "mt-2idx"])
def test_tiny_min_time_root_bound(name, tiny_min_time):
    bound = root_lower_bound(build_model(name, tiny_min_time), tiny_min_time)
    # customer 2 needs at least its cheapest arc in and out
    assert 4 <= bound <= 6


@pytest.mark.parametrize("name", ["mc-3idx", "mc-2idx"])
def test_tiny_min_cost_root_bound(name, tiny_min_cost):
    bound = root_lower_bound(build_model(name, tiny_min_cost), tiny_min_cost)
    assert 0 < bound <= 7


def test_root_conflict_reports_infeasible():
    instance = make_tiny_min_cost(truck_capacity=5, drone_time_limit=4)
    assert root_lower_bound(build_model("mc-3idx", instance), instance) == INFEASIBLE


@pytest.mark.parametrize("variant", ["MIN_TIME", "MIN_COST"])
def test_root_bound_never_exceeds_the_optimum(variant):
    for instance in random_suite(count=8, seed=11, variant=variant, n_range=(1, 4)):
        optimum = brute_force(instance).optimum
        for name in models_for_variant(variant):
            bound = root_lower_bound(build_model(name, instance), instance)
            if optimum is None:
                continue
            assert bound <= optimum, f"{name} on {instance.name}: {bound} > {optimum}"


@pytest.mark.parametrize("variant", ["MIN_TIME", "MIN_COST"])
def test_interior_bound_never_exceeds_the_optimum(variant):
    rng = np.random.default_rng(37)
    for instance in random_suite(count=8, seed=23, variant=variant, n_range=(2, 4)):
        result = brute_force(instance)
        if not result.feasible:
            continue
        for name in models_for_variant(variant):
            model = build_model(name, instance)
            context = BoundContext(model, instance)
            engine = PropagationEngine(model)
            optimal = encode_solution(model, result.witnesses[0], instance)
            for _ in range(10):
                # a state that the optimal witness still completes
                store = DomainStore.for_model(model)
                for var in model.booleans:
                    if rng.random() < 0.3:
                        store.fix(var.index, optimal[var.index])
                assert engine.propagate(store, everything=True), f"{name} on {instance.name}"
                bound = lower_bound(context, store)
                assert bound <= result.optimum, f"{name} on {instance.name}: {bound} > {result.optimum}"
