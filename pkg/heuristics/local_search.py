"""
Improvement of a feasible solution: best-improvement descent over the
relocate / swap / 2-opt / truck-drone neighbourhood, then seeded
ruin-and-recreate rounds.

Only strict improvements of (objective, total vehicle time) are accepted,
and every accepted solution passes the validator, so improve never returns
anything worse than its input.

Usage:
    from heuristics.local_search import improve

    better = improve(instance, start, budget=2.0, seed=7)
"""

import logging
import time
from typing import Optional, Tuple

import numpy as np

from core.instance import Instance
from core.objective import raw_objective, vehicle_times
from core.solution import Solution
from core.validator import validate_solution
from heuristics.moves import apply_move, neighborhood, ruin_move

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERATIONS = 200


def solution_key(instance: Instance, solution: Solution) -> Tuple[int, int]:
    """Lexicographic acceptance key (objective, total vehicle time)."""
    return raw_objective(instance, solution), sum(vehicle_times(instance, solution))


def default_ruin_size(instance: Instance) -> int:
    return max(2, instance.n // 10)


class _Budget:
    def __init__(self, seconds: Optional[float], iterations: int):
        self.deadline = None if seconds is None else time.perf_counter() + seconds
        self.iterations_left = iterations

    def spend(self) -> bool:
        """Consume one iteration; False once the time or iteration budget is gone."""
        if self.iterations_left <= 0:
            return False
        if self.deadline is not None and time.perf_counter() >= self.deadline:
            return False
        self.iterations_left -= 1
        return True


def _descend(instance: Instance, current: Solution, key, budget: _Budget):
    """Best-improvement steps until a local optimum or the budget runs out."""
    while budget.spend():
        best, best_key = None, key
        for move in neighborhood(instance, current):
            candidate = apply_move(instance, current, move)
            candidate_key = solution_key(instance, candidate)
            if candidate_key >= best_key:
                continue
            if not validate_solution(instance, candidate).feasible:
                continue
            best, best_key = candidate, candidate_key
        if best is None:
            break
        current, key = best, best_key
    return current, key


def improve(
    instance: Instance,
    start: Solution,
    budget: Optional[float] = None,
    seed: int = 0,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    ruin_size: Optional[int] = None,
) -> Solution:
    """
    Improve a feasible solution within ``budget`` seconds (None = no time
    limit) and ``max_iterations`` descent steps plus ruin rounds.

    A zero budget, or an infeasible start, returns ``start`` unchanged.
    """
    if budget is not None and budget <= 0:
        return start
    if not validate_solution(instance, start).feasible:
        logger.warning(f"improve() called with an infeasible start on {instance.name}; returning it unchanged")
        return start

    rng = np.random.default_rng(seed)
    limits = _Budget(budget, max_iterations)
    size = ruin_size or default_ruin_size(instance)

    key = solution_key(instance, start)
    current, key = _descend(instance, start, key, limits)
    rounds = 0
    while limits.spend():
        rounds += 1
        move = ruin_move(instance.customers, size, rng)
        if move is None:
            break
        candidate = apply_move(instance, current, move)
        candidate_key = solution_key(instance, candidate)
        if candidate_key < key and validate_solution(instance, candidate).feasible:
            current, key = _descend(instance, candidate, candidate_key, limits)
            logger.debug(f"Ruin round {rounds}: objective {key[0]}")

    logger.debug(f"improve({instance.name}): {solution_key(instance, start)[0]} -> {key[0]}")
    return current
