"""
Tests for the exhaustive oracle.
"""

import dataclasses
import math

import numpy as np
import pytest

from core.errors import OracleGuardError
from core.objective import objective_value
from core.solution import Solution, canonicalize_solution
from instance_io.generators import random_min_time, random_suite
from oracle.brute_force import brute_force, count_feasible, enumerate_feasible
from tests.factories import make_tiny_min_cost


def test_tiny_min_time_enumeration(tiny_min_time):
    result = brute_force(tiny_min_time)
    assert result.feasible
    assert result.optimum == 6
    assert result.witnesses == (Solution.from_routes([[2]], [[1]]),)
    assert result.feasible_count == 3
    assert count_feasible(tiny_min_time) == 3


def test_tiny_min_cost_has_two_optimal_directions(tiny_min_cost):
    result = brute_force(tiny_min_cost)
    assert result.optimum == 7
    assert sorted(w.truck_tours for w in result.witnesses) == [((0, 1, 2, 0),), ((0, 2, 1, 0),)]
    for witness in result.witnesses:
        assert objective_value(tiny_min_cost, witness) == 7


def test_limits_prune_the_feasible_set():
    assert brute_force(make_tiny_min_cost(truck_capacity=5)).optimum == 8
    result = brute_force(make_tiny_min_cost(truck_capacity=5, drone_time_limit=4))
    assert not result.feasible
    assert result.optimum is None
    assert result.witnesses == ()


def test_enumerated_solutions_are_canonical_and_distinct():
    small = random_min_time(4, trucks=2, drones=1, seed=8, eligible_fraction=0.5)
    seen = [s for s, _ in enumerate_feasible(small)]
    assert len(seen) == len(set(seen))
    assert all(canonicalize_solution(s) == s for s in seen)


@pytest.mark.parametrize("kwargs", [
    dict(n=10, trucks=1, drones=1),
    dict(n=3, trucks=4, drones=1),
    dict(n=3, trucks=1, drones=4),
])
def test_guard_rejects_large_instances(kwargs):
    with pytest.raises(OracleGuardError):
        brute_force(random_min_time(seed=0, **kwargs))


# ----------------------------------------------------------------------
# symmetry and scaling
# ----------------------------------------------------------------------

def relabel_customers(instance, mapping):
    """Same instance with old node ``i`` renamed ``mapping[i]`` (depot fixed)."""
    old_of = [0] * instance.node_count
    for old, new in enumerate(mapping):
        old_of[new] = old

    def matrix(rows):
        return [[rows[old_of[a]][old_of[b]] for b in instance.nodes] for a in instance.nodes]

    fields = dict(
        truck_time=matrix(instance.truck_time),
        drone_eligible=[mapping[i] for i in instance.drone_eligible],
    )
    if instance.is_min_cost:
        fields.update(
            truck_cost=matrix(instance.truck_cost),
            weight=[instance.weight[old_of[a]] for a in instance.nodes],
        )
    return dataclasses.replace(instance, **fields)


@pytest.mark.parametrize("variant", ["MIN_TIME", "MIN_COST"])
def test_optimum_ignores_customer_labels(variant):
    rng = np.random.default_rng(5)
    for instance in random_suite(count=6, seed=31, variant=variant, n_range=(2, 5)):
        mapping = [0] + [int(c) + 1 for c in rng.permutation(instance.n)]
        relabelled = relabel_customers(instance, mapping)
        original = brute_force(instance)
        renamed = brute_force(relabelled)
        assert renamed.optimum == original.optimum, instance.name
        assert renamed.feasible_count == original.feasible_count, instance.name


def test_optimum_ignores_vehicle_order():
    instance = random_min_time(4, trucks=2, drones=2, seed=12, eligible_fraction=0.75)
    for witness in brute_force(instance).witnesses:
        flipped = Solution(witness.truck_tours[::-1], witness.drone_missions[::-1])
        assert objective_value(instance, flipped) == objective_value(instance, witness)
        assert canonicalize_solution(flipped) == witness


@pytest.mark.parametrize("factor", [2, 3, 7])
def test_min_time_optimum_scales_with_the_matrices(factor):
    for instance in random_suite(count=5, seed=17, n_range=(2, 5)):
        scaled = dataclasses.replace(
            instance,
            truck_time=[[factor * v for v in row] for row in instance.truck_time],
            drone_time=[factor * t for t in instance.drone_time],
        )
        original = brute_force(instance)
        assert brute_force(scaled).optimum == factor * original.optimum, instance.name


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_count_with_one_truck_and_one_drone(n):
    # drone set S of size k leaves (n - k)! truck orders
    instance = random_min_time(n, trucks=1, drones=1, seed=n, eligible_fraction=1.0)
    expected = sum(math.comb(n, k) * math.factorial(n - k) for k in range(n + 1))
    assert count_feasible(instance) == expected


def test_count_for_three_customers_by_hand():
    # 6 truck-only orders, 3 x 2 with one drone customer, 3 with two, 1 all-drone
    instance = random_min_time(3, trucks=1, drones=1, seed=4, eligible_fraction=1.0)
    assert count_feasible(instance) == 16


def test_count_with_two_interchangeable_trucks():
    # truck-only customers 1 and 2: one tour in two directions, or one each
    instance = random_min_time(2, trucks=2, drones=0, seed=9, eligible_fraction=0.0)
    assert count_feasible(instance) == 3
