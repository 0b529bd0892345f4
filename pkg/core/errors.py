"""
Exception hierarchy for DroneSched.

Infeasibility is never raised: it is reported through FeasibilityReport,
OracleResult or SolveOutcome. The classes below signal inputs that cannot be
evaluated at all.
"""

from typing import Optional


class DroneSchedError(Exception):
    """Base class for all DroneSched errors."""


class InstanceError(DroneSchedError, ValueError):
    """An Instance invariant is broken at construction time."""


class StructuralError(DroneSchedError, ValueError):
    """Objects do not fit together (fleet sizes, node ids, model vs instance)."""


class UndefinedObjectiveError(DroneSchedError):
    """Objective requested for an infeasible solution."""


class ModelBuildError(DroneSchedError, ValueError):
    """A formulation builder precondition is violated."""


class DecodeError(DroneSchedError):
    """An engine assignment does not encode a valid solution."""


class ConfigError(DroneSchedError, ValueError):
    """Invalid search configuration, converter parameters or run manifest."""


class OracleGuardError(DroneSchedError, ValueError):
    """Instance too large for exhaustive enumeration."""


class ParseError(DroneSchedError, ValueError):
    """
    Malformed document.

    The rendered message always carries the location (line number and/or
    field name) so that callers can point at the offending input.
    """

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        self.reason = message
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field {field}")
        prefix = f"[{', '.join(location)}] " if location else "[document] "
        super().__init__(prefix + message)
