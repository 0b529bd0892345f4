"""
Routing-specialised constraint IR.

A ConstraintModel declares boolean and bounded integer variables, an ordered
list of constraints and an objective. Booleans are integer variables with
domain [0, 1]; a Literal is a boolean variable, possibly negated.

Constraint semantics (shared by the engine and by ``check_assignment``):

- ExactlyOne: exactly one literal holds.
- LinearLe / LinearEq: sum of coef * term <= bound / == rhs, where a negated
  term over a boolean stands for (1 - var).
- MaxBound: target >= sum of terms + constant.
- Implication: when the literal holds, the inner linear relation holds.
- Circuit: selected arcs form one cycle through every non-skipped node; a
  selected self-loop marks a skipped node; when the depot's own self-loop is
  selected, every node is skipped.
- MultipleCircuit: every non-depot node has exactly one selected outgoing and
  one selected incoming arc (its self-loop counts), every other cycle passes
  through the depot, and depot departures lie in [min_departures, max_departures].

Usage:
    from formulations.ir import ModelBuilder, ExactlyOne

    builder = ModelBuilder("toy")
    a = builder.new_bool(("a",))
    b = builder.new_bool(("b",))
    builder.add(ExactlyOne((a, b), label="pick-one"))
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Hashable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from core.instance import DEPOT, Instance, Variant

Tag = Tuple[Hashable, ...]
Arc = Tuple[int, int]


class Literal(NamedTuple):
    """Boolean variable reference, optionally negated."""
    var: int
    negated: bool = False

    def negate(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def holds(self, value: int) -> bool:
        return (value == 1) != self.negated

    def value_making_true(self) -> int:
        return 0 if self.negated else 1


class LinearTerm(NamedTuple):
    """coef * var, or coef * (1 - var) when ``negated`` (booleans only)."""
    coef: int
    var: int
    negated: bool = False


def term(coef: int, literal: Literal) -> LinearTerm:
    """Linear term over a literal."""
    return LinearTerm(coef, literal.var, literal.negated)


@dataclass(frozen=True)
class VarDecl:
    index: int
    tag: Tag
    lo: int
    hi: int
    is_bool: bool


# ----------------------------------------------------------------------
# Constraints
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ExactlyOne:
    literals: Tuple[Literal, ...]
    label: str = ""


@dataclass(frozen=True)
class LinearLe:
    terms: Tuple[LinearTerm, ...]
    bound: int
    label: str = ""


@dataclass(frozen=True)
class LinearEq:
    terms: Tuple[LinearTerm, ...]
    rhs: int
    label: str = ""


@dataclass(frozen=True)
class MaxBound:
    target: int
    terms: Tuple[LinearTerm, ...]
    constant: int = 0
    label: str = ""


LinearRelation = Union[LinearLe, LinearEq, MaxBound]


@dataclass(frozen=True)
class Implication:
    literal: Literal
    relation: LinearRelation
    label: str = ""


@dataclass(frozen=True)
class Circuit:
    nodes: Tuple[int, ...]
    arcs: Mapping[Arc, Literal]
    depot: int = DEPOT
    label: str = ""


@dataclass(frozen=True)
class MultipleCircuit:
    nodes: Tuple[int, ...]
    arcs: Mapping[Arc, Literal]
    depot: int = DEPOT
    max_departures: Optional[int] = None
    min_departures: int = 0
    label: str = ""


Constraint = Union[ExactlyOne, LinearLe, LinearEq, MaxBound, Implication, Circuit, MultipleCircuit]


class ObjectiveKind(str, Enum):
    MINIMIZE_VAR = "minimize_var"
    MINIMIZE_LINEAR = "minimize_linear"


@dataclass(frozen=True)
class Objective:
    kind: ObjectiveKind
    target: Optional[int] = None
    terms: Tuple[LinearTerm, ...] = ()

    @classmethod
    def minimize_var(cls, var: int) -> "Objective":
        return cls(ObjectiveKind.MINIMIZE_VAR, target=var)

    @classmethod
    def minimize_linear(cls, terms: Sequence[LinearTerm]) -> "Objective":
        return cls(ObjectiveKind.MINIMIZE_LINEAR, terms=tuple(terms))


@dataclass(frozen=True)
class DecodeKey:
    """Tag families that encode tours ("z" per truck or "y" giant tour) and missions ("x")."""
    tours: str
    missions: str = "x"


@dataclass(frozen=True)
class ConstraintModel:
    """
    Immutable constraint model built from an Instance.

    Besides declarations and constraints it carries the routing metadata the
    engine and the decoder need: arc literals per truck layer, drone
    assignment literals and the arrival/load accumulator variables.
    """

    name: str
    variant: Variant
    variables: Tuple[VarDecl, ...]
    constraints: Tuple[Constraint, ...]
    objective: Objective
    decode_key: DecodeKey
    node_count: int
    truck_count: int
    drone_count: int
    force_truck_use: bool = False
    truck_arcs: Tuple[Mapping[Arc, Literal], ...] = ()
    drone_literals: Mapping[Tuple[int, int], Literal] = field(default_factory=dict)
    arrival_vars: Mapping[int, int] = field(default_factory=dict)
    load_vars: Mapping[int, int] = field(default_factory=dict)
    tag_index: Mapping[Tag, int] = field(default_factory=dict, repr=False)

    def var(self, tag: Tag) -> int:
        """Index of the variable declared with ``tag``."""
        return self.tag_index[tag]

    def lit(self, tag: Tag) -> Literal:
        return Literal(self.tag_index[tag])

    @property
    def booleans(self) -> List[VarDecl]:
        return [v for v in self.variables if v.is_bool]

    @property
    def integers(self) -> List[VarDecl]:
        return [v for v in self.variables if not v.is_bool]

    @property
    def is_giant_tour(self) -> bool:
        return self.decode_key.tours == "y"

    def count_constraints(self) -> Dict[str, int]:
        """Number of constraints per constraint class name."""
        counts: Dict[str, int] = {}
        for c in self.constraints:
            key = type(c).__name__
            counts[key] = counts.get(key, 0) + 1
        return counts

    def matches(self, instance: Instance) -> bool:
        """True when the model was built for an instance of this shape."""
        return (
            instance.variant is self.variant
            and instance.node_count == self.node_count
            and instance.truck_count == self.truck_count
            and instance.drone_count == self.drone_count
        )

    def __repr__(self):
        return (
            f"ConstraintModel({self.name}, bools={len(self.booleans)}, ints={len(self.integers)}, "
            f"constraints={len(self.constraints)})"
        )


class ModelBuilder:
    """Accumulates declarations and constraints, then freezes a ConstraintModel."""

    def __init__(self, name: str):
        self.name = name
        self.variables: List[VarDecl] = []
        self.constraints: List[Constraint] = []
        self.tag_index: Dict[Tag, int] = {}

    def _declare(self, tag: Tag, lo: int, hi: int, is_bool: bool) -> int:
        if tag in self.tag_index:
            raise ValueError(f"variable {tag} declared twice")
        index = len(self.variables)
        self.variables.append(VarDecl(index, tag, lo, hi, is_bool))
        self.tag_index[tag] = index
        return index

    def new_bool(self, tag: Tag) -> Literal:
        return Literal(self._declare(tag, 0, 1, True))

    def new_int(self, tag: Tag, lo: int, hi: int) -> int:
        if lo > hi:
            raise ValueError(f"empty domain [{lo}, {hi}] for {tag}")
        return self._declare(tag, lo, hi, False)

    def add(self, constraint: Constraint) -> None:
        self.constraints.append(constraint)

    def build(self, **kwargs) -> ConstraintModel:
        return ConstraintModel(
            name=self.name,
            variables=tuple(self.variables),
            constraints=tuple(self.constraints),
            tag_index=dict(self.tag_index),
            **kwargs,
        )


# ----------------------------------------------------------------------
# Exact evaluation (independent of the engine)
# ----------------------------------------------------------------------

Assignment = Mapping[int, int]


def linear_value(terms: Sequence[LinearTerm], assignment: Assignment) -> int:
    total = 0
    for coef, var, negated in terms:
        value = assignment[var]
        total += coef * ((1 - value) if negated else value)
    return total


def relation_holds(relation: LinearRelation, assignment: Assignment) -> bool:
    if isinstance(relation, LinearLe):
        return linear_value(relation.terms, assignment) <= relation.bound
    if isinstance(relation, LinearEq):
        return linear_value(relation.terms, assignment) == relation.rhs
    if isinstance(relation, MaxBound):
        return assignment[relation.target] >= linear_value(relation.terms, assignment) + relation.constant
    raise TypeError(f"not a linear relation: {relation!r}")


def _selected_arcs(arcs: Mapping[Arc, Literal], assignment: Assignment) -> List[Arc]:
    return [arc for arc, lit in arcs.items() if lit.holds(assignment[lit.var])]


def circuit_holds(constraint: Circuit, assignment: Assignment) -> bool:
    succ: Dict[int, int] = {}
    pred: Dict[int, int] = {}
    for i, j in _selected_arcs(constraint.arcs, assignment):
        if i in succ or j in pred:
            return False
        succ[i] = j
        pred[j] = i
    if any(v not in succ or v not in pred for v in constraint.nodes):
        return False
    skipped = {v for v in constraint.nodes if succ[v] == v}
    if constraint.depot in skipped:
        return len(skipped) == len(constraint.nodes)
    active = [v for v in constraint.nodes if v not in skipped]
    length, current = 1, succ[constraint.depot]
    while current != constraint.depot:
        current = succ[current]
        length += 1
        if length > len(active):
            return False
    return length == len(active)


def multiple_circuit_holds(constraint: MultipleCircuit, assignment: Assignment) -> bool:
    depot = constraint.depot
    succ: Dict[int, int] = {}
    pred: Dict[int, int] = {}
    departures: List[int] = []
    arrivals = 0
    for i, j in _selected_arcs(constraint.arcs, assignment):
        if i == depot:
            departures.append(j)
        elif i in succ:
            return False
        else:
            succ[i] = j
        if j == depot:
            arrivals += 1
        elif j in pred:
            return False
        else:
            pred[j] = i
    customers = [v for v in constraint.nodes if v != depot]
    if any(v not in succ or v not in pred for v in customers):
        return False
    if len(departures) != arrivals or len(departures) < constraint.min_departures:
        return False
    if constraint.max_departures is not None and len(departures) > constraint.max_departures:
        return False
    on_tour = set()
    for first in departures:
        current, steps = first, 0
        while current != depot:
            on_tour.add(current)
            current = succ[current]
            steps += 1
            if steps > len(customers):
                return False
    return all(succ[v] == v or v in on_tour for v in customers)


def constraint_holds(constraint: Constraint, assignment: Assignment) -> bool:
    """Exact truth value of one constraint under a complete assignment."""
    if isinstance(constraint, ExactlyOne):
        return sum(1 for lit in constraint.literals if lit.holds(assignment[lit.var])) == 1
    if isinstance(constraint, (LinearLe, LinearEq, MaxBound)):
        return relation_holds(constraint, assignment)
    if isinstance(constraint, Implication):
        lit = constraint.literal
        return not lit.holds(assignment[lit.var]) or relation_holds(constraint.relation, assignment)
    if isinstance(constraint, Circuit):
        return circuit_holds(constraint, assignment)
    if isinstance(constraint, MultipleCircuit):
        return multiple_circuit_holds(constraint, assignment)
    raise TypeError(f"unknown constraint {constraint!r}")


def violated_constraints(model: ConstraintModel, assignment: Assignment) -> List[Constraint]:
    """Constraints (and domain bounds, reported as LinearLe) violated by the assignment."""
    violated: List[Constraint] = []
    for decl in model.variables:
        value = assignment[decl.index]
        if not decl.lo <= value <= decl.hi:
            violated.append(LinearLe((LinearTerm(1, decl.index),), decl.hi, label=f"domain {decl.tag}"))
    violated.extend(c for c in model.constraints if not constraint_holds(c, assignment))
    return violated


def check_assignment(model: ConstraintModel, assignment: Assignment) -> bool:
    """True when the complete assignment satisfies every domain and constraint."""
    return not violated_constraints(model, assignment)


def evaluate_objective(model: ConstraintModel, assignment: Assignment) -> int:
    objective = model.objective
    if objective.kind is ObjectiveKind.MINIMIZE_VAR:
        return assignment[objective.target]
    return linear_value(objective.terms, assignment)
