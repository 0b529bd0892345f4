"""
Core data model: instances, solutions, objective evaluation and the
feasibility validator.
"""

from .errors import (
    ConfigError,
    DecodeError,
    DroneSchedError,
    InstanceError,
    ModelBuildError,
    OracleGuardError,
    ParseError,
    StructuralError,
    UndefinedObjectiveError,
)
from .instance import DEPOT, Instance, Variant
from .objective import objective_value, raw_objective, vehicle_times
from .solution import Solution, canonicalize_solution
from .validator import FeasibilityReport, Violation, ViolationKind, validate_solution

__all__ = [
    'ConfigError',
    'DecodeError',
    'DroneSchedError',
    'InstanceError',
    'ModelBuildError',
    'OracleGuardError',
    'ParseError',
    'StructuralError',
    'UndefinedObjectiveError',
    'DEPOT',
    'Instance',
    'Variant',
    'objective_value',
    'raw_objective',
    'vehicle_times',
    'Solution',
    'canonicalize_solution',
    'FeasibilityReport',
    'Violation',
    'ViolationKind',
    'validate_solution',
]
