"""
Propagators for the constraint IR and the fixpoint loop that runs them.

Every IR constraint compiles to one or more propagators over a DomainStore.
Linear relations are normalised to rows sum(a_i * x_i) <= b (negated
boolean terms fold into the constant, equalities become two rows, MaxBound
moves its target to the left-hand side). The objective cut is a row whose
bound is read from the shared incumbent board each time it runs.

The queue runs ExactlyOne first, then circuits, then linear rows.
"""

import heapq
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Mapping, Optional, Sequence, Tuple

from engine.circuit import circuit_filter
from engine.state import DomainStore, Inconsistency
from formulations.ir import (
    Circuit,
    ConstraintModel,
    ExactlyOne,
    Implication,
    LinearEq,
    LinearLe,
    LinearTerm,
    Literal,
    MaxBound,
    MultipleCircuit,
    ObjectiveKind,
)

logger = logging.getLogger(__name__)

PRIORITY_EXACTLY_ONE = 0
PRIORITY_CIRCUIT = 1
PRIORITY_LINEAR = 2


class LinearRow:
    """sum(coefs[i] * vars[i]) <= bound."""

    priority = PRIORITY_LINEAR

    def __init__(self, coefs: Sequence[int], variables: Sequence[int], bound: int):
        self.coefs = list(coefs)
        self.vars = list(variables)
        self.bound = bound

    @classmethod
    def from_terms(cls, terms: Sequence[LinearTerm], bound: int, sign: int = 1) -> "LinearRow":
        coefs, variables = [], []
        for coef, var, negated in terms:
            c = sign * coef
            if negated:
                bound -= c
                c = -c
            coefs.append(c)
            variables.append(var)
        return cls(coefs, variables, bound)

    def watched(self) -> List[int]:
        return self.vars

    def min_activity(self, store: DomainStore) -> int:
        lo, hi = store.lo, store.hi
        return sum(a * lo[v] if a > 0 else a * hi[v] for a, v in zip(self.coefs, self.vars))

    def propagate(self, store: DomainStore, bound: Optional[int] = None) -> None:
        bound = self.bound if bound is None else bound
        lo, hi = store.lo, store.hi
        mins = [a * lo[v] if a > 0 else a * hi[v] for a, v in zip(self.coefs, self.vars)]
        slack = bound - sum(mins)
        if slack < 0:
            raise Inconsistency("linear")
        for a, v, m in zip(self.coefs, self.vars, mins):
            room = slack + m
            if a > 0:
                store.set_hi(v, room // a)
            elif a < 0:
                store.set_lo(v, -(room // -a))

    def __repr__(self):
        return f"LinearRow({list(zip(self.coefs, self.vars))} <= {self.bound})"


class ObjectiveCut:
    """objective <= incumbent - 1, with the incumbent read at run time."""

    priority = PRIORITY_LINEAR

    def __init__(self, row: LinearRow, cut_bound: Callable[[], Optional[int]]):
        self.row = row
        self.cut_bound = cut_bound

    def watched(self) -> List[int]:
        return self.row.vars

    def propagate(self, store: DomainStore) -> None:
        bound = self.cut_bound()
        if bound is not None:
            self.row.propagate(store, bound)


class ExactlyOnePropagator:
    priority = PRIORITY_EXACTLY_ONE

    def __init__(self, literals: Sequence[Literal]):
        self.literals = list(literals)

    def watched(self) -> List[int]:
        return [lit.var for lit in self.literals]

    def propagate(self, store: DomainStore) -> None:
        true_lits = [lit for lit in self.literals if store.is_true(lit)]
        if len(true_lits) > 1:
            raise Inconsistency("exactly-one")
        if true_lits:
            for lit in self.literals:
                if store.truth(lit) is None:
                    store.set_literal(lit, False)
            return
        free = [lit for lit in self.literals if store.truth(lit) is None]
        if not free:
            raise Inconsistency("exactly-one")
        if len(free) == 1:
            store.set_literal(free[0], True)


class ImplicationPropagator:
    """literal => rows; a row that can no longer hold falsifies the literal."""

    priority = PRIORITY_LINEAR

    def __init__(self, literal: Literal, rows: List[LinearRow]):
        self.literal = literal
        self.rows = rows

    def watched(self) -> List[int]:
        out = [self.literal.var]
        for row in self.rows:
            out.extend(row.vars)
        return out

    def propagate(self, store: DomainStore) -> None:
        truth = store.truth(self.literal)
        if truth is False:
            return
        if truth is True:
            for row in self.rows:
                row.propagate(store)
            return
        if any(row.min_activity(store) > row.bound for row in self.rows):
            store.set_literal(self.literal, False)


class CircuitPropagator:
    priority = PRIORITY_CIRCUIT

    def __init__(self, constraint):
        self.constraint = constraint
        self.multiple = isinstance(constraint, MultipleCircuit)
        self.arcs: List[Tuple[Tuple[int, int], Literal]] = list(constraint.arcs.items())

    def watched(self) -> List[int]:
        return [lit.var for _, lit in self.arcs]

    def propagate(self, store: DomainStore) -> None:
        c = self.constraint
        states = {arc: store.truth(lit) for arc, lit in self.arcs}
        result = circuit_filter(
            c.nodes, states,
            multiple=self.multiple,
            depot=c.depot,
            max_departures=getattr(c, "max_departures", None),
            min_departures=getattr(c, "min_departures", 0),
        )
        if result.conflict:
            raise Inconsistency("circuit")
        for arc, lit in self.arcs:
            value = result.arcs[arc]
            if states[arc] is None and value is not None:
                store.set_literal(lit, value)


def relation_rows(relation) -> List[LinearRow]:
    """Rows of a LinearLe / LinearEq / MaxBound."""
    if isinstance(relation, LinearLe):
        return [LinearRow.from_terms(relation.terms, relation.bound)]
    if isinstance(relation, LinearEq):
        return [
            LinearRow.from_terms(relation.terms, relation.rhs),
            LinearRow.from_terms(relation.terms, -relation.rhs, sign=-1),
        ]
    if isinstance(relation, MaxBound):
        # sum(terms) - target <= -constant
        terms = tuple(relation.terms) + (LinearTerm(-1, relation.target),)
        return [LinearRow.from_terms(terms, -relation.constant)]
    raise TypeError(f"not a linear relation: {relation!r}")


def compile_constraint(constraint) -> list:
    if isinstance(constraint, ExactlyOne):
        return [ExactlyOnePropagator(constraint.literals)]
    if isinstance(constraint, (LinearLe, LinearEq, MaxBound)):
        return relation_rows(constraint)
    if isinstance(constraint, Implication):
        return [ImplicationPropagator(constraint.literal, relation_rows(constraint.relation))]
    if isinstance(constraint, (Circuit, MultipleCircuit)):
        return [CircuitPropagator(constraint)]
    raise TypeError(f"unknown constraint {constraint!r}")


def objective_row(model: ConstraintModel) -> LinearRow:
    objective = model.objective
    if objective.kind is ObjectiveKind.MINIMIZE_VAR:
        return LinearRow([1], [objective.target], 0)
    return LinearRow.from_terms(objective.terms, 0)


class PropagationEngine:
    """
    Compiled propagators plus watch lists for one model.

    The engine holds no search state and can be shared by worker threads;
    the queue lives inside each ``propagate`` call.
    """

    def __init__(self, model: ConstraintModel, cut_bound: Optional[Callable[[], Optional[int]]] = None):
        self.model = model
        self.propagators: list = []
        for constraint in model.constraints:
            self.propagators.extend(compile_constraint(constraint))
        self.cut_index: Optional[int] = None
        if cut_bound is not None:
            self.cut_index = len(self.propagators)
            self.propagators.append(ObjectiveCut(objective_row(model), cut_bound))
        self.watchers: List[List[int]] = [[] for _ in model.variables]
        for index, prop in enumerate(self.propagators):
            for var in set(prop.watched()):
                self.watchers[var].append(index)

    def propagate(self, store: DomainStore, everything: bool = False, counter: Optional[list] = None) -> bool:
        """
        Run propagators to a fixpoint.

        Starts from the watchers of the variables touched since the last call
        (all propagators when ``everything``); the objective cut always runs.
        Returns False on conflict. ``counter[0]`` accumulates propagator runs.
        """
        heap: List[Tuple[int, int]] = []
        queued = set()

        def schedule(index: int) -> None:
            if index not in queued:
                queued.add(index)
                heapq.heappush(heap, (self.propagators[index].priority, index))

        if everything:
            for index in range(len(self.propagators)):
                schedule(index)
        else:
            for var in store.touched:
                for index in self.watchers[var]:
                    schedule(index)
            if self.cut_index is not None:
                schedule(self.cut_index)
        store.touched.clear()

        runs = 0
        try:
            while heap:
                _, index = heapq.heappop(heap)
                queued.discard(index)
                self.propagators[index].propagate(store)
                runs += 1
                for var in store.touched:
                    for watcher in self.watchers[var]:
                        schedule(watcher)
                store.touched.clear()
        except Inconsistency:
            store.touched.clear()
            return False
        finally:
            if counter is not None:
                counter[0] += runs
        return True


@dataclass
class PropagationResult:
    """Outcome of a standalone propagation call: Conflict, or the fixpoint domains."""
    conflict: bool
    lows: List[int] = field(default_factory=list)
    highs: List[int] = field(default_factory=list)

    def domain(self, var: int) -> Tuple[int, int]:
        return self.lows[var], self.highs[var]

    def literal_truth(self, lit: Literal):
        lo, hi = self.lows[lit.var], self.highs[lit.var]
        if lo != hi:
            return None
        return lit.holds(lo)


def propagate(model: ConstraintModel, fixed: Optional[Mapping[int, int]] = None) -> PropagationResult:
    """
    Propagate the model's constraints from its initial domains with some
    variables fixed, returning the fixpoint or a conflict.
    """
    store = DomainStore.for_model(model)
    try:
        for var, value in (fixed or {}).items():
            store.fix(var, value)
    except Inconsistency:
        return PropagationResult(True)
    engine = PropagationEngine(model)
    if not engine.propagate(store, everything=True):
        return PropagationResult(True)
    return PropagationResult(False, list(store.lo), list(store.hi))
