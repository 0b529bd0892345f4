"""
Translation between engine assignments and Solutions.

decode_solution follows arc literals from the depot (per truck layer for the
three-index models; for the giant tour, departures in ascending node order
are assigned to trucks in that order) and reads drone missions from the
x literals. encode_solution is the inverse and produces a complete
satisfying assignment, accumulators included.
"""

from typing import Dict, List, Mapping, Tuple

from core.errors import DecodeError, StructuralError
from core.instance import DEPOT, Instance
from core.measures import mission_time, tour_time
from core.solution import Solution, Tour
from core.validator import check_dimensions, validate_solution
from formulations.ir import Arc, ConstraintModel, Literal, ObjectiveKind


def _check_signature(model: ConstraintModel, instance: Instance) -> None:
    if not model.matches(instance):
        raise StructuralError(f"{model!r} was not built for {instance!r}")


def _successors(arcs: Mapping[Arc, Literal], assignment: Mapping[int, int]) -> Dict[int, List[int]]:
    succ: Dict[int, List[int]] = {}
    for (i, j), lit in arcs.items():
        if i != j and lit.holds(assignment[lit.var]):
            succ.setdefault(i, []).append(j)
    for targets in succ.values():
        targets.sort()
    return succ


def _follow(succ: Dict[int, List[int]], first: int, limit: int) -> Tour:
    tour = [DEPOT]
    current = first
    while current != DEPOT:
        if current in tour or len(tour) > limit:
            raise DecodeError(f"arc set revisits node {current}: not a depot-anchored tour")
        tour.append(current)
        nxt = succ.get(current)
        if not nxt or len(nxt) != 1:
            raise DecodeError(f"node {current} has {len(nxt or [])} selected outgoing arcs")
        current = nxt[0]
    tour.append(DEPOT)
    return tuple(tour)


def _used_arcs(succ: Dict[int, List[int]]) -> int:
    return sum(len(v) for v in succ.values())


def decode_solution(model: ConstraintModel, assignment: Mapping[int, int], instance: Instance) -> Solution:
    """
    Solution encoded by a satisfying assignment.

    Raises:
        DecodeError: the arc set contains a subtour or a customer is uncovered.
        StructuralError: the model was built for another instance shape.
    """
    _check_signature(model, instance)
    limit = instance.node_count
    tours: List[Tour] = []

    if model.is_giant_tour:
        succ = _successors(model.truck_arcs[0], assignment)
        for first in succ.get(DEPOT, []):
            tours.append(_follow(succ, first, limit))
        if len(tours) > instance.truck_count:
            raise DecodeError(f"{len(tours)} tours for {instance.truck_count} trucks")
        if sum(len(t) - 1 for t in tours) != _used_arcs(succ):
            raise DecodeError("selected arcs contain a cycle that avoids the depot")
        tours.extend(() for _ in range(instance.truck_count - len(tours)))
    else:
        for k, layer in enumerate(model.truck_arcs):
            succ = _successors(layer, assignment)
            departures = succ.get(DEPOT, [])
            if not departures:
                if succ:
                    raise DecodeError(f"truck {k} has selected arcs but never leaves the depot")
                tours.append(())
                continue
            if len(departures) > 1:
                raise DecodeError(f"truck {k} leaves the depot {len(departures)} times")
            tour = _follow(succ, departures[0], limit)
            if len(tour) - 1 != _used_arcs(succ):
                raise DecodeError(f"truck {k} arc set contains a subtour")
            tours.append(tour)

    missions: List[List[int]] = [[] for _ in range(instance.drone_count)]
    for (d, i), lit in sorted(model.drone_literals.items()):
        if lit.holds(assignment[lit.var]):
            missions[d].append(i)

    solution = Solution(tuple(tours), tuple(tuple(m) for m in missions))
    report = validate_solution(instance, solution)
    if not report.feasible:
        raise DecodeError(f"decoded solution is infeasible: {list(report.violations)}")
    return solution


def _set(assignment: Dict[int, int], lit: Literal, value: bool) -> None:
    assignment[lit.var] = lit.value_making_true() if value else 1 - lit.value_making_true()


def _tour_arcs(tour: Tour) -> List[Tuple[int, int]]:
    return list(zip(tour, tour[1:]))


def encode_solution(model: ConstraintModel, solution: Solution, instance: Instance) -> Dict[int, int]:
    """
    Complete assignment of ``model`` encoding ``solution``.

    Raises:
        StructuralError: the solution does not fit the instance or the model
            cannot represent it (idle truck under forced truck use, more
            tours than the giant tour allows).
    """
    _check_signature(model, instance)
    check_dimensions(instance, solution)
    assignment: Dict[int, int] = {v.index: 0 for v in model.variables}
    tt = instance.truck_time

    if model.is_giant_tour:
        arcs = model.truck_arcs[0]
        for lit in arcs.values():
            _set(assignment, lit, False)
        visited = set()
        used = [t for t in solution.truck_tours if t]
        if model.force_truck_use and len(used) < instance.truck_count:
            raise StructuralError("every truck must serve a customer when truck use is forced")
        for tour in used:
            for arc in _tour_arcs(tour):
                _set(assignment, arcs[arc], True)
            visited.update(tour[1:-1])
        for i in instance.customers:
            if i not in visited:
                _set(assignment, arcs[(i, i)], True)
    else:
        for layer, tour in zip(model.truck_arcs, solution.truck_tours):
            for lit in layer.values():
                _set(assignment, lit, False)
            if not tour:
                if (DEPOT, DEPOT) not in layer:
                    raise StructuralError("every truck must serve a customer when truck use is forced")
                for v in instance.nodes:
                    _set(assignment, layer[(v, v)], True)
                continue
            for arc in _tour_arcs(tour):
                _set(assignment, layer[arc], True)
            on_tour = set(tour)
            for v in instance.customers:
                if v not in on_tour:
                    _set(assignment, layer[(v, v)], True)

    for (d, i), lit in model.drone_literals.items():
        _set(assignment, lit, i in solution.drone_missions[d])

    for tour in solution.truck_tours:
        elapsed, load = 0, 0
        for a, b in _tour_arcs(tour)[:-1]:
            elapsed += tt[a][b]
            if model.arrival_vars:
                assignment[model.arrival_vars[b]] = elapsed
            if model.load_vars:
                load += instance.weight[b]
                assignment[model.load_vars[b]] = load

    if model.objective.kind is ObjectiveKind.MINIMIZE_VAR:
        makespan = max(
            [tour_time(instance, t) for t in solution.truck_tours]
            + [mission_time(instance, m) for m in solution.drone_missions],
            default=0,
        )
        assignment[model.objective.target] = makespan
    return assignment
