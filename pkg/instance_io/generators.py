"""
Seeded random instance generators.

Points are drawn on an integer grid with numpy's default_rng and converted
with convert_coordinates, so a generated instance is fully determined by its
arguments. Min-cost instances can be drawn in a "binding" mode where
capacity and working-time limits are sampled around the values a solution
actually needs, which makes some of them tight and some infeasible.

Usage:
    from instance_io.generators import random_min_time, random_suite

    instance = random_min_time(n=6, trucks=2, drones=2, seed=3)
    suite = random_suite(count=20, seed=0, variant="MIN_COST")
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from core.errors import ConfigError
from core.instance import Instance, Variant
from instance_io.converters import ConverterParams, RoundingRule, convert_coordinates

logger = logging.getLogger(__name__)

DEFAULT_GRID = 50


def _points(rng: np.random.Generator, n: int, grid: int) -> List[Tuple[float, float]]:
    coords = rng.integers(0, grid + 1, size=(n + 1, 2))
    return [(float(x), float(y)) for x, y in coords]


def _fraction(rng: np.random.Generator, eligible_fraction: Optional[float]) -> float:
    if eligible_fraction is not None:
        return eligible_fraction
    return float(rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]))


def random_min_time(
    n: int,
    trucks: int = 1,
    drones: int = 1,
    seed: int = 0,
    eligible_fraction: Optional[float] = None,
    drone_speed: float = 1.0,
    grid: int = DEFAULT_GRID,
    scale: int = 1,
) -> Instance:
    """Random MIN_TIME instance with Euclidean truck times (round-nearest)."""
    if n < 1:
        raise ConfigError(f"a generated instance needs at least one customer, got n={n}")
    rng = np.random.default_rng(seed)
    points = _points(rng, n, grid)
    params = ConverterParams(
        eligible_fraction=_fraction(rng, eligible_fraction),
        drone_speed=drone_speed,
        rounding=RoundingRule.ROUND_NEAREST,
        seed=int(rng.integers(0, 2**31 - 1)),
        trucks=trucks,
        drones=drones,
        scale=scale,
    )
    return convert_coordinates(points, params, name=f"random_mt_n{n}_s{seed}", source="generator")


def random_min_cost(
    n: int,
    trucks: int = 1,
    drones: int = 1,
    seed: int = 0,
    binding: bool = True,
    eligible_fraction: Optional[float] = None,
    grid: int = DEFAULT_GRID,
    scale: int = 1,
) -> Instance:
    """
    Random MIN_COST instance.

    Weights are drawn in [1, 10]. Drone cost per unit is drawn from
    {0.5, 1, 2}. With ``binding`` the capacity is sampled in
    [0.5, 1.3] x (total weight / trucks), the truck time limit in
    [0.6, 1.5] x the longest depot round trip times ceil(n / trucks), and
    the drone time limit in [0.4, 1.2] x (total drone time / drones);
    otherwise limits are left non-binding.
    """
    if n < 1:
        raise ConfigError(f"a generated instance needs at least one customer, got n={n}")
    rng = np.random.default_rng(seed)
    points = _points(rng, n, grid)
    weights = [0] + [int(w) for w in rng.integers(1, 11, size=n)]
    fraction = _fraction(rng, eligible_fraction)
    drone_cost = float(rng.choice([0.5, 1.0, 2.0]))
    eligibility_seed = int(rng.integers(0, 2**31 - 1))

    capacity = truck_limit = drone_limit = None
    if binding:
        depot = points[0]
        round_trip = max(2.0 * math.dist(depot, p) for p in points[1:])
        total_weight = sum(weights)
        capacity = max(1, int(math.ceil(rng.uniform(0.5, 1.3) * total_weight / trucks)))
        truck_limit = float(math.ceil(rng.uniform(0.6, 1.5) * round_trip * math.ceil(n / trucks)))
        # drone work estimate from the same eligibility sample the converter will draw
        eligible_count = int(math.floor(fraction * n + 1e-9))
        mean_trip = sum(2.0 * math.dist(depot, p) for p in points[1:]) / n
        drone_limit = float(math.ceil(rng.uniform(0.4, 1.2) * mean_trip * eligible_count / max(drones, 1)))

    params = ConverterParams(
        eligible_fraction=fraction,
        rounding=RoundingRule.ROUND_NEAREST,
        seed=eligibility_seed,
        trucks=trucks,
        drones=drones,
        scale=scale,
        variant=Variant.MIN_COST,
        drone_cost_per_unit=drone_cost,
        capacity=capacity,
        truck_time_limit=truck_limit,
        drone_time_limit=drone_limit,
    )
    return convert_coordinates(
        points, params, name=f"random_mc_n{n}_s{seed}", weights=weights, source="generator"
    )


def random_suite(
    count: int,
    seed: int = 0,
    variant: Variant = Variant.MIN_TIME,
    n_range: Tuple[int, int] = (1, 6),
    max_trucks: int = 2,
    max_drones: int = 2,
    binding: bool = True,
) -> List[Instance]:
    """
    ``count`` independent instances; sizes are drawn uniformly from
    ``n_range`` (inclusive) and fleets from [1, max_trucks] x [0, max_drones].
    """
    variant = Variant(variant)
    lo, hi = n_range
    if lo < 1 or hi < lo:
        raise ConfigError(f"invalid n_range {n_range}")
    children = np.random.SeedSequence(seed).spawn(count)
    suite = []
    for child in children:
        rng = np.random.default_rng(child)
        n = int(rng.integers(lo, hi + 1))
        trucks = int(rng.integers(1, max_trucks + 1))
        drones = int(rng.integers(0, max_drones + 1))
        instance_seed = int(rng.integers(0, 2**31 - 1))
        if variant is Variant.MIN_COST:
            suite.append(random_min_cost(n, trucks, drones, seed=instance_seed, binding=binding))
        else:
            suite.append(random_min_time(n, trucks, drones, seed=instance_seed))
    logger.debug(f"Generated {len(suite)} {variant.value} instances from seed {seed}")
    return suite
