"""
Long sweeps: every model against the brute-force oracle on random instances
up to six customers, and anytime runs on fifteen customers. Deselected by
default; run with ``pytest -m slow``.
"""

import numpy as np
import pytest

from config.search_configs import EXHAUSTIVE_CONFIG, SearchConfig
from core.instance import Variant
from core.objective import objective_value
from core.validator import validate_solution
from engine.outcome import SolveStatus
from engine.search import solve
from formulations.registry import build_model, models_for_variant
from heuristics.local_search import improve
from instance_io.generators import random_min_cost, random_min_time, random_suite
from oracle.brute_force import brute_force

pytestmark = pytest.mark.slow


def _check_against_oracle(instance):
    """Solve with every model of the variant; returns the oracle optimum."""
    expected = brute_force(instance).optimum
    values = {}
    for name in models_for_variant(instance.variant):
        outcome = solve(build_model(name, instance), instance, EXHAUSTIVE_CONFIG)
        if expected is None:
            assert outcome.status is SolveStatus.INFEASIBLE, f"{name} on {instance.name}"
            continue
        assert outcome.status is SolveStatus.OPTIMAL, f"{name} on {instance.name}"
        assert validate_solution(instance, outcome.incumbent).feasible
        values[name] = outcome.upper_bound
    if expected is not None:
        assert set(values.values()) == {expected}, instance.name
    return expected


def test_min_time_sweep_matches_the_oracle():
    suite = random_suite(count=200, seed=2024, variant=Variant.MIN_TIME, n_range=(1, 6))
    assert max(i.n for i in suite) <= 6
    for instance in suite:
        _check_against_oracle(instance)


def test_min_cost_sweep_matches_the_oracle():
    rng = np.random.default_rng(2025)
    binding = infeasible = 0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        trucks = int(rng.integers(1, 3))
        drones = int(rng.integers(0, 3))
        seed = int(rng.integers(0, 2**31 - 1))
        limited = random_min_cost(n, trucks, drones, seed=seed, binding=True)
        # same points, weights and eligibility, limits left slack
        relaxed = random_min_cost(n, trucks, drones, seed=seed, binding=False)
        expected = _check_against_oracle(limited)
        if expected is None:
            infeasible += 1
        if expected != brute_force(relaxed).optimum:
            binding += 1
    assert binding >= 60
    assert infeasible >= 10


def test_six_customers_two_trucks_two_drones():
    _check_against_oracle(random_min_time(6, trucks=2, drones=2, seed=3))


def test_min_cost_where_no_single_truck_fits_everything():
    instance = random_min_cost(5, trucks=2, drones=1, seed=8, binding=True)
    _check_against_oracle(instance)


def test_local_search_keeps_an_optimal_start():
    for instance in random_suite(count=5, seed=21, n_range=(5, 5)):
        result = brute_force(instance)
        if not result.feasible:
            continue
        start = result.witnesses[0]
        improved = improve(instance, start, seed=1)
        assert objective_value(instance, improved) == result.optimum


# ----------------------------------------------------------------------
# anytime behaviour on fifteen customers
# ----------------------------------------------------------------------

@pytest.mark.parametrize("name", models_for_variant(Variant.MIN_TIME))
@pytest.mark.parametrize("seed", range(20))
def test_fifteen_customer_anytime_run(name, seed):
    instance = random_min_time(15, trucks=1 + seed % 2, drones=1 + seed % 3, seed=100 + seed)
    outcome = solve(build_model(name, instance), instance, SearchConfig(time_budget=10.0, random_seed=seed))
    assert outcome.status in (SolveStatus.OPTIMAL, SolveStatus.FEASIBLE)
    assert outcome.incumbent is not None
    assert validate_solution(instance, outcome.incumbent).feasible
    assert objective_value(instance, outcome.incumbent) == outcome.upper_bound
    assert outcome.lower_bound <= outcome.upper_bound
    lbs = [p.lower_bound for p in outcome.trace if p.lower_bound is not None]
    ubs = [p.upper_bound for p in outcome.trace if p.upper_bound is not None]
    assert lbs == sorted(lbs)
    assert ubs == sorted(ubs, reverse=True)
