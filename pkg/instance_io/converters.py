"""
Converters from TSPLIB and CVRPLIB coordinate files to native instances.

Truck times come from the chosen distance rounding rule (TSPLIB rules give
an integer distance that is then multiplied by the scale; exact-scaled
rounds the scaled Euclidean distance). A drone round trip to customer i is
2 * distance(depot, i) / drone_speed, scaled and rounded half up. The
drone-eligible customers are a seeded sample of floor(fraction * n)
customers. Every parameter is recorded in the instance provenance.

Usage:
    from instance_io.converters import ConverterParams, convert_file

    instance = convert_file("att48.tsp", ConverterParams(eligible_fraction=0.8, drones=2))
"""

import logging
import math
from dataclasses import dataclass, fields
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import ConfigError, ParseError
from core.instance import DEFAULT_SCALE, Instance, Variant

logger = logging.getLogger(__name__)

Point = Tuple[float, float]


class RoundingRule(str, Enum):
    ROUND_NEAREST = "round-nearest"
    CEILING = "ceiling"
    ATT = "att"
    EXACT_SCALED = "exact-scaled"


class DroneMetric(str, Enum):
    EUCLIDEAN = "euclidean"
    SAME_AS_TRUCK = "same-as-truck"


# TSPLIB EDGE_WEIGHT_TYPE -> rounding rule
EDGE_WEIGHT_RULES = {
    "EUC_2D": RoundingRule.ROUND_NEAREST,
    "CEIL_2D": RoundingRule.CEILING,
    "ATT": RoundingRule.ATT,
}


@dataclass(frozen=True)
class ConverterParams:
    """How missing problem data is derived from a coordinate file."""

    # Drone side
    eligible_fraction: float = 0.8
    drone_speed: float = 1.0  # relative to the truck
    drone_metric: DroneMetric = DroneMetric.EUCLIDEAN
    seed: int = 0

    # Truck distances (None: taken from the file's EDGE_WEIGHT_TYPE)
    rounding: Optional[RoundingRule] = None

    # Fleet and units
    trucks: int = 1
    drones: int = 1
    scale: int = DEFAULT_SCALE
    variant: Variant = Variant.MIN_TIME

    # Min-cost derivation (limits in original units; None = not binding)
    truck_cost_per_unit: float = 1.0
    drone_cost_per_unit: float = 1.0
    capacity: Optional[int] = None
    truck_time_limit: Optional[float] = None
    drone_time_limit: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "drone_metric", DroneMetric(self.drone_metric))
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.rounding is not None:
            object.__setattr__(self, "rounding", RoundingRule(self.rounding))
        if not 0.0 <= self.eligible_fraction <= 1.0:
            raise ConfigError(f"eligible_fraction must lie in [0, 1], got {self.eligible_fraction}")
        if self.drone_speed <= 0:
            raise ConfigError(f"drone_speed must be > 0, got {self.drone_speed}")
        if self.trucks < 1 or self.drones < 0:
            raise ConfigError("at least one truck and a nonnegative number of drones are required")
        if self.scale < 1:
            raise ConfigError(f"scale must be >= 1, got {self.scale}")

    def as_provenance(self) -> List[Tuple[str, str]]:
        out = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            out.append((f.name, value.value if isinstance(value, Enum) else str(value)))
        return out


def tsplib_round(x: float) -> int:
    """TSPLIB nint."""
    return int(math.floor(x + 0.5))


def truck_distance(a: Point, b: Point, rule: RoundingRule, scale: int) -> int:
    """Scaled integer truck distance between two points."""
    xd, yd = a[0] - b[0], a[1] - b[1]
    if rule is RoundingRule.ATT:
        rij = math.sqrt((xd * xd + yd * yd) / 10.0)
        tij = tsplib_round(rij)
        return (tij + 1 if tij < rij else tij) * scale
    dist = math.sqrt(xd * xd + yd * yd)
    if rule is RoundingRule.CEILING:
        return int(math.ceil(dist)) * scale
    if rule is RoundingRule.ROUND_NEAREST:
        return tsplib_round(dist) * scale
    return tsplib_round(dist * scale)


def sample_eligible(n: int, fraction: float, seed: int) -> List[int]:
    count = int(math.floor(fraction * n + 1e-9))
    if count == 0:
        return []
    rng = np.random.default_rng(seed)
    chosen = rng.choice(np.arange(1, n + 1), size=count, replace=False)
    return sorted(int(c) for c in chosen)


def convert_coordinates(
    points: Sequence[Point],
    params: ConverterParams,
    name: str = "converted",
    weights: Optional[Sequence[int]] = None,
    capacity: Optional[int] = None,
    rounding: RoundingRule = RoundingRule.ROUND_NEAREST,
    source: Optional[str] = None,
) -> Instance:
    """
    Instance from coordinates; point 0 is the depot.

    ``weights`` (one per point, depot first) and ``capacity`` come from a
    CVRPLIB file and are only used for min-cost instances; params.capacity
    overrides the file capacity. ``rounding`` applies when params.rounding
    is None.
    """
    if len(points) < 2:
        raise ConfigError("a conversion needs the depot and at least one customer")
    rule = params.rounding or RoundingRule(rounding)
    scale = params.scale
    size = len(points)
    n = size - 1

    truck_time = [[truck_distance(points[i], points[j], rule, scale) if i != j else 0
                   for j in range(size)] for i in range(size)]
    eligible = sample_eligible(n, params.eligible_fraction, params.seed)
    drone_time = []
    for i in eligible:
        if params.drone_metric is DroneMetric.SAME_AS_TRUCK:
            one_way = truck_time[0][i] / scale
        else:
            one_way = math.dist(points[0], points[i])
        drone_time.append(tsplib_round(2.0 * one_way / params.drone_speed * scale))

    provenance = []
    if source:
        provenance.append(("source", source))
    provenance.append(("rounding_applied", rule.value))
    provenance += params.as_provenance()

    kwargs = dict(
        name=name,
        truck_count=params.trucks,
        drone_count=params.drones,
        truck_time=truck_time,
        drone_eligible=tuple(eligible),
        drone_time=tuple(drone_time),
        scale=scale,
        variant=params.variant,
        provenance=tuple(provenance),
    )
    if params.variant is Variant.MIN_COST:
        kwargs.update(_min_cost_block(truck_time, drone_time, params, weights, capacity))
    instance = Instance(**kwargs)
    logger.info(f"Converted {name}: n={n}, eligible={len(eligible)}, rule={rule.value}")
    return instance


def _min_cost_block(truck_time, drone_time, params, weights, capacity) -> dict:
    scale = params.scale
    size = len(truck_time)
    raw = list(weights) if weights is not None else [0] + [1] * (size - 1)
    weight = [0] + [int(w) * scale for w in raw[1:]]
    total = sum(weight)
    cap = params.capacity if params.capacity is not None else capacity
    cap = total if cap is None else int(cap) * scale
    horizon = sum(max(row) for row in truck_time)
    truck_limit = horizon if params.truck_time_limit is None else tsplib_round(params.truck_time_limit * scale)
    drone_limit = sum(drone_time) if params.drone_time_limit is None else tsplib_round(params.drone_time_limit * scale)
    return dict(
        truck_cost=[[tsplib_round(params.truck_cost_per_unit * t) for t in row] for row in truck_time],
        drone_cost=tuple(tsplib_round(params.drone_cost_per_unit * t) for t in drone_time),
        weight=tuple(weight),
        truck_capacity=cap,
        truck_time_limit=truck_limit,
        drone_time_limit=drone_limit,
    )


# ----------------------------------------------------------------------
# Coordinate file readers
# ----------------------------------------------------------------------

@dataclass
class CoordinateFile:
    name: str
    edge_weight_type: str
    points: List[Point]
    ids: List[int]
    demands: Optional[List[int]] = None
    capacity: Optional[int] = None
    depot_id: Optional[int] = None

    @property
    def is_cvrp(self) -> bool:
        return self.demands is not None


def parse_coordinate_file(text: str) -> CoordinateFile:
    """
    Read a TSPLIB / CVRPLIB coordinate file (NODE_COORD_SECTION, optional
    DEMAND_SECTION and DEPOT_SECTION).
    """
    lines = text.splitlines()
    header = {}
    ids: List[int] = []
    points: List[Point] = []
    demands = {}
    depots: List[int] = []
    section = None

    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line == "EOF":
            continue
        upper = line.upper()
        if upper.endswith("_SECTION"):
            section = upper
            continue
        if ":" in line:
            key, _, value = line.partition(":")
            header[key.strip().upper()] = value.strip()
            section = None
            continue
        tokens = line.split()
        try:
            if section == "NODE_COORD_SECTION":
                if len(tokens) < 3:
                    raise ValueError
                ids.append(int(tokens[0]))
                points.append((float(tokens[1]), float(tokens[2])))
            elif section == "DEMAND_SECTION":
                demands[int(tokens[0])] = int(tokens[1])
            elif section == "DEPOT_SECTION":
                for token in tokens:
                    if int(token) != -1:
                        depots.append(int(token))
            elif section is None:
                raise ParseError(f"unexpected line '{line}'", line=number, field="header")
        except (ValueError, IndexError):
            raise ParseError(f"malformed entry '{line}'", line=number, field=section) from None

    if not points:
        raise ParseError("no NODE_COORD_SECTION entries", field="NODE_COORD_SECTION")
    dimension = header.get("DIMENSION")
    if dimension is not None and dimension.isdigit() and int(dimension) != len(points):
        raise ParseError(f"DIMENSION {dimension} but {len(points)} coordinates", field="DIMENSION")

    edge_type = header.get("EDGE_WEIGHT_TYPE", "EUC_2D").upper()
    if edge_type not in EDGE_WEIGHT_RULES:
        raise ParseError(f"unsupported EDGE_WEIGHT_TYPE {edge_type}", field="EDGE_WEIGHT_TYPE")

    is_cvrp = bool(demands) or "CVRP" in header.get("TYPE", "").upper()
    demand_list = None
    capacity = None
    if is_cvrp:
        missing = [i for i in ids if i not in demands]
        if missing:
            raise ParseError(f"no demand for node {missing[0]}", field="DEMAND_SECTION")
        demand_list = [demands[i] for i in ids]
        if "CAPACITY" in header:
            try:
                capacity = int(header["CAPACITY"])
            except ValueError:
                raise ParseError(f"CAPACITY '{header['CAPACITY']}' is not an integer", field="CAPACITY") from None
    depot_id = depots[0] if depots else ids[0]
    if depot_id not in ids:
        raise ParseError(f"depot {depot_id} has no coordinates", field="DEPOT_SECTION")

    return CoordinateFile(
        name=header.get("NAME", "converted"),
        edge_weight_type=edge_type,
        points=points,
        ids=ids,
        demands=demand_list,
        capacity=capacity,
        depot_id=depot_id,
    )


def convert_text(text: str, params: ConverterParams, source: Optional[str] = None) -> Instance:
    """Parse a coordinate file and convert it; the depot becomes node 0, others keep file order."""
    parsed = parse_coordinate_file(text)
    depot_pos = parsed.ids.index(parsed.depot_id)
    order = [depot_pos] + [k for k in range(len(parsed.ids)) if k != depot_pos]
    points = [parsed.points[k] for k in order]
    weights = None
    if parsed.demands is not None:
        weights = [0] + [parsed.demands[k] for k in order[1:]]
    suffix = f"{params.eligible_fraction:.2f}".replace(".", "_")
    return convert_coordinates(
        points, params,
        name=f"{parsed.name}_{suffix}",
        weights=weights,
        capacity=parsed.capacity,
        rounding=EDGE_WEIGHT_RULES[parsed.edge_weight_type],
        source=source,
    )


def convert_file(path: Union[str, Path], params: ConverterParams) -> Instance:
    path = Path(path)
    return convert_text(path.read_text(encoding="utf-8"), params, source=path.name)
