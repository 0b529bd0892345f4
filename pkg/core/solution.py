"""
Solution representation: one depot-anchored tour per truck plus one mission
list per drone.

An idle truck has an empty tour ``()``; a used truck has a tour
``(0, c1, ..., cm, 0)``. A drone mission list holds the customers the drone
serves, one depot round trip each.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

Tour = Tuple[int, ...]
Missions = Tuple[int, ...]


@dataclass(frozen=True)
class Solution:
    """Immutable solution: per-truck tours and per-drone mission lists."""

    truck_tours: Tuple[Tour, ...]
    drone_missions: Tuple[Missions, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "truck_tours", tuple(tuple(int(v) for v in t) for t in self.truck_tours))
        object.__setattr__(self, "drone_missions", tuple(tuple(int(v) for v in m) for m in self.drone_missions))

    @classmethod
    def from_lists(
        cls,
        truck_tours: Iterable[Sequence[int]],
        drone_missions: Iterable[Sequence[int]] = (),
    ) -> "Solution":
        """Build a Solution from plain lists (depot markers included in tours)."""
        return cls(tuple(tuple(t) for t in truck_tours), tuple(tuple(m) for m in drone_missions))

    @classmethod
    def from_routes(
        cls,
        routes: Iterable[Sequence[int]],
        drone_missions: Iterable[Sequence[int]] = (),
    ) -> "Solution":
        """Build a Solution from customer sequences without depot markers."""
        tours = tuple((0, *route, 0) if route else () for route in routes)
        return cls(tours, tuple(tuple(m) for m in drone_missions))

    def routes(self) -> List[List[int]]:
        """Customer sequences of each truck, depot markers stripped."""
        return [list(t[1:-1]) if t else [] for t in self.truck_tours]

    def served_customers(self) -> Iterator[int]:
        for tour in self.truck_tours:
            yield from tour[1:-1]
        for missions in self.drone_missions:
            yield from missions

    def __repr__(self):
        return f"Solution(tours={list(self.truck_tours)}, missions={list(self.drone_missions)})"


def canonicalize_solution(solution: Solution) -> Solution:
    """
    Canonical form of a solution.

    Mission lists are sorted ascending and ordered (empty last); truck tours
    are ordered (empty last) without touching the node order inside a tour.
    Fleets are homogeneous, so the objective is unchanged.
    """
    missions = [tuple(sorted(m)) for m in solution.drone_missions]
    missions.sort(key=lambda m: (len(m) == 0, m))
    tours = sorted(solution.truck_tours, key=lambda t: (len(t) == 0, t))
    return Solution(tuple(tours), tuple(missions))
