"""
Circuit filtering on partially fixed arc sets.

Works on a map arc -> True / False / None (free). Self-loop arcs (v, v) mark
node v as skipped. In single-circuit mode the selected arcs must form one
cycle through the depot and every non-skipped node, and a selected depot
self-loop skips every node. In multiple-circuit mode every non-depot node
has in/out degree one, every cycle passes through the depot and the number
of depot departures is bounded.

Filtering (repeated until nothing changes):
- degree: at most one selected arc leaving and entering each node, a node
  with a single remaining candidate takes it;
- skip semantics (single mode): the depot self-loop decides for all nodes;
- departures (multiple mode): departure and arrival counts within bounds;
- premature cycles: an arc closing a chain of selected arcs into a cycle
  that the mode does not allow is removed; a closed illegal cycle is a
  conflict;
- reachability: a node that cannot be reached from the depot (or cannot
  reach it) over non-removed arcs must be skipped.

Usage:
    from engine.circuit import circuit_filter

    result = circuit_filter(nodes, {(0, 1): None, (1, 0): True, ...})
    if result.conflict:
        ...
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from core.instance import DEPOT

Arc = Tuple[int, int]
ArcState = Optional[bool]


@dataclass
class CircuitFilterResult:
    conflict: bool
    arcs: Dict[Arc, ArcState] = field(default_factory=dict)

    def removed(self, before: Mapping[Arc, ArcState]) -> List[Arc]:
        """Arcs free in ``before`` and excluded by the filter."""
        return [a for a, v in self.arcs.items() if v is False and before.get(a) is None]


class _Conflict(Exception):
    pass


class _Filter:
    def __init__(self, nodes: Iterable[int], arcs: Mapping[Arc, ArcState], multiple: bool,
                 depot: int, max_departures: Optional[int], min_departures: int):
        self.nodes = list(nodes)
        self.state: Dict[Arc, ArcState] = dict(arcs)
        self.multiple = multiple
        self.depot = depot
        self.max_departures = max_departures
        self.min_departures = min_departures
        self.out_arcs: Dict[int, List[Arc]] = {v: [] for v in self.nodes}
        self.in_arcs: Dict[int, List[Arc]] = {v: [] for v in self.nodes}
        for arc in self.state:
            self.out_arcs[arc[0]].append(arc)
            self.in_arcs[arc[1]].append(arc)
        self.changed = False

    def assign(self, arc: Arc, value: bool) -> None:
        current = self.state[arc]
        if current is None:
            self.state[arc] = value
            self.changed = True
        elif current != value:
            raise _Conflict()

    def loop(self, v: int) -> ArcState:
        """State of v's self-loop; a missing loop can never be selected."""
        return self.state.get((v, v), False)

    def must_visit(self, v: int) -> bool:
        return self.loop(v) is False

    # ------------------------------------------------------------------

    def _exactly_one(self, arcs: List[Arc]) -> None:
        chosen = [a for a in arcs if self.state[a] is True]
        if len(chosen) > 1:
            raise _Conflict()
        if chosen:
            for a in arcs:
                if self.state[a] is None:
                    self.assign(a, False)
            return
        free = [a for a in arcs if self.state[a] is None]
        if not free:
            raise _Conflict()
        if len(free) == 1:
            self.assign(free[0], True)

    def degree(self) -> None:
        for v in self.nodes:
            if self.multiple and v == self.depot:
                continue
            self._exactly_one(self.out_arcs[v])
            self._exactly_one(self.in_arcs[v])

    def skip_semantics(self) -> None:
        depot_loop = (self.depot, self.depot)
        if depot_loop not in self.state:
            return
        if self.state[depot_loop] is True:
            for v in self.nodes:
                self.assign((v, v), True)
            return
        used = any(v is True for (i, j), v in self.state.items() if i != j)
        if used or any(self.must_visit(v) for v in self.nodes if v != self.depot):
            self.assign(depot_loop, False)

    def _bounded_count(self, arcs: List[Arc]) -> None:
        chosen = sum(1 for a in arcs if self.state[a] is True)
        free = [a for a in arcs if self.state[a] is None]
        if self.max_departures is not None:
            if chosen > self.max_departures:
                raise _Conflict()
            if chosen == self.max_departures:
                for a in free:
                    self.assign(a, False)
                return
        if chosen + len(free) < self.min_departures:
            raise _Conflict()
        if free and chosen + len(free) == self.min_departures:
            for a in free:
                self.assign(a, True)

    def departures(self) -> None:
        self._bounded_count([a for a in self.out_arcs[self.depot] if a[1] != self.depot])
        self._bounded_count([a for a in self.in_arcs[self.depot] if a[0] != self.depot])

    def premature_cycles(self) -> None:
        succ: Dict[int, int] = {}
        pred: Dict[int, int] = {}
        for (i, j), v in self.state.items():
            if v is True and i != j:
                if self.multiple and (i == self.depot or j == self.depot):
                    continue
                if i in succ or j in pred:
                    raise _Conflict()
                succ[i] = j
                pred[j] = i

        seen: Set[int] = set()
        for start in [v for v in succ if v not in pred]:
            chain = [start]
            current = start
            while current in succ:
                current = succ[current]
                chain.append(current)
            seen.update(chain)
            closing = (chain[-1], chain[0])
            if self.state.get(closing) is None and closing in self.state and not self._may_close(chain):
                self.assign(closing, False)

        # whatever is left in succ lies on a closed cycle
        for v in succ:
            if v in seen:
                continue
            cycle = [v]
            current = succ[v]
            while current != v:
                if current not in succ or len(cycle) > len(succ):
                    raise _Conflict()
                cycle.append(current)
                current = succ[current]
            seen.update(cycle)
            if not self._may_close(cycle):
                raise _Conflict()
            for u in self.nodes:
                if u not in cycle:
                    self.assign((u, u), True)

    def _may_close(self, cycle: List[int]) -> bool:
        if self.multiple:
            return False
        if self.depot not in cycle:
            return False
        members = set(cycle)
        return all(not self.must_visit(u) for u in self.nodes if u not in members)

    def reachability(self) -> None:
        depot = self.depot
        if not self.multiple and self.loop(depot) is True:
            return
        forward = self._reach(depot, self.out_arcs, 1)
        backward = self._reach(depot, self.in_arcs, 0)
        for v in self.nodes:
            if v == depot or (v in forward and v in backward):
                continue
            if (v, v) not in self.state:
                raise _Conflict()
            self.assign((v, v), True)

    def _reach(self, source: int, incident: Dict[int, List[Arc]], end: int) -> Set[int]:
        reached = {source}
        frontier = [source]
        while frontier:
            v = frontier.pop()
            for arc in incident[v]:
                w = arc[end]
                if w in reached or self.state[arc] is False:
                    continue
                reached.add(w)
                frontier.append(w)
        return reached

    def run(self) -> None:
        for _ in range(len(self.state) + 1):
            self.changed = False
            self.degree()
            if self.multiple:
                self.departures()
            else:
                self.skip_semantics()
            self.premature_cycles()
            self.reachability()
            if not self.changed:
                return


def circuit_filter(
    nodes: Iterable[int],
    arcs: Mapping[Arc, ArcState],
    multiple: bool = False,
    depot: int = DEPOT,
    max_departures: Optional[int] = None,
    min_departures: int = 0,
) -> CircuitFilterResult:
    """
    Filter a partially fixed arc set.

    Returns the filtered arc states, or ``conflict=True`` when no completion
    can satisfy the circuit. Never removes an arc that belongs to some valid
    completion.
    """
    filt = _Filter(nodes, arcs, multiple, depot, max_departures, min_departures)
    try:
        filt.run()
    except _Conflict:
        return CircuitFilterResult(True, dict(arcs))
    return CircuitFilterResult(False, filt.state)
