"""
Tests for construction, neighbourhood moves and local search.
"""

import itertools

import pytest

from core.objective import objective_value, raw_objective
from core.solution import Solution, canonicalize_solution
from core.validator import validate_solution
from heuristics.construction import construct_initial
from heuristics.local_search import improve, solution_key
from heuristics.moves import MoveKind, NeighborhoodMove, apply_move, neighborhood
from instance_io.generators import random_suite
from oracle.brute_force import brute_force
from tests.factories import make_tiny_min_cost


def test_construction_on_tiny_instances(tiny_min_time, tiny_min_cost):
    assert construct_initial(tiny_min_time) == Solution.from_routes([[2]], [[1]])
    assert objective_value(tiny_min_cost, construct_initial(tiny_min_cost)) == 7


def test_construction_reports_failure_as_none():
    assert construct_initial(make_tiny_min_cost(truck_capacity=5, drone_time_limit=4)) is None


def test_truck_to_drone_move(tiny_min_time):
    start = Solution.from_routes([[1, 2]], [[]])
    move = NeighborhoodMove(MoveKind.TRUCK_TO_DRONE, (1,), drones=(0,))
    assert apply_move(tiny_min_time, start, move) == Solution.from_routes([[2]], [[1]])


def test_two_opt_and_swap(example8, example8_solution):
    reversed_tour = apply_move(
        example8, example8_solution, NeighborhoodMove(MoveKind.TWO_OPT, trucks=(0,), positions=(0, 1))
    )
    assert reversed_tour.truck_tours[0] == (0, 3, 2, 0)

    swapped = apply_move(example8, example8_solution, NeighborhoodMove(MoveKind.SWAP, (2, 6)))
    assert swapped.routes() == [[6, 3], [2, 7]]
    assert swapped.drone_missions == example8_solution.drone_missions


def test_ruin_and_recreate_serves_every_customer(example8, example8_solution):
    move = NeighborhoodMove(MoveKind.RUIN_RECREATE, (1, 3, 7))
    assert validate_solution(example8, apply_move(example8, example8_solution, move)).feasible


def test_neighbourhood_respects_eligibility(example8, example8_solution):
    moves = list(neighborhood(example8, example8_solution))
    kinds = {m.kind for m in moves}
    assert {MoveKind.RELOCATE, MoveKind.SWAP, MoveKind.TWO_OPT, MoveKind.DRONE_TO_TRUCK} <= kinds
    for move in moves:
        assert validate_solution(example8, apply_move(example8, example8_solution, move)).feasible, move


def test_improve_finds_the_drone_option(tiny_min_time):
    start = Solution.from_routes([[1, 2]], [[]])
    assert objective_value(tiny_min_time, improve(tiny_min_time, start)) == 6


def test_zero_budget_returns_the_start(tiny_min_time):
    start = Solution.from_routes([[1, 2]], [[]])
    assert improve(tiny_min_time, start, budget=0) is start


def test_infeasible_start_is_returned_unchanged(tiny_min_time):
    start = Solution.from_routes([[2]], [[]])
    assert improve(tiny_min_time, start) is start


@pytest.mark.parametrize("variant", ["MIN_TIME", "MIN_COST"])
def test_improve_never_makes_things_worse(variant):
    for instance in random_suite(count=10, seed=4, variant=variant, n_range=(2, 7)):
        start = construct_initial(instance)
        if start is None:
            continue
        better = improve(instance, start, seed=3, max_iterations=30)
        assert validate_solution(instance, better).feasible
        assert solution_key(instance, better) <= solution_key(instance, start)


def test_improve_is_deterministic_for_a_seed(example8, example8_solution):
    first = improve(example8, example8_solution, seed=9, max_iterations=20)
    second = improve(example8, example8_solution, seed=9, max_iterations=20)
    assert first == second


def swap_customers(solution, a, b):
    def rename(seq):
        return tuple(b if v == a else a if v == b else v for v in seq)
    return canonicalize_solution(Solution(
        tuple(rename(t) for t in solution.truck_tours),
        tuple(rename(m) for m in solution.drone_missions),
    ))


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["MIN_TIME", "MIN_COST"])
def test_improve_repairs_a_swap_away_from_the_optimum(variant):
    runs = improved = 0
    for index, instance in enumerate(random_suite(count=20, seed=41, variant=variant, n_range=(5, 5))):
        result = brute_force(instance)
        if not result.feasible:
            continue
        optimal = result.witnesses[0]
        for a, b in itertools.combinations(instance.customers, 2):
            start = swap_customers(optimal, a, b)
            if not validate_solution(instance, start).feasible:
                continue
            before = raw_objective(instance, start)
            if before == result.optimum:
                continue
            runs += 1
            after = raw_objective(instance, improve(instance, start, seed=index))
            if after < before:
                improved += 1
    assert runs > 0
    assert improved >= 0.95 * runs
