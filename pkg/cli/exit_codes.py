"""
Process exit codes.

    0  OK              command completed (solve/bench: whatever the statuses)
    1  INFEASIBLE      validate found violations, or the oracle proved infeasibility
    2  USAGE           bad arguments, invalid configuration or manifest
    3  PARSE_ERROR     unreadable or malformed input file
    4  MODEL_MISMATCH  model/variant mismatch or objects that do not fit together
    5  INTERNAL_ERROR  anything else
"""

from enum import IntEnum

from core.errors import (
    ConfigError,
    ModelBuildError,
    OracleGuardError,
    ParseError,
    StructuralError,
)


class ExitCode(IntEnum):
    OK = 0
    INFEASIBLE = 1
    USAGE = 2
    PARSE_ERROR = 3
    MODEL_MISMATCH = 4
    INTERNAL_ERROR = 5


def exit_code_for(error: BaseException) -> ExitCode:
    """Exit code of a failed command."""
    if isinstance(error, (ConfigError, OracleGuardError)):
        return ExitCode.USAGE
    if isinstance(error, (ParseError, OSError)):
        return ExitCode.PARSE_ERROR
    if isinstance(error, (ModelBuildError, StructuralError)):
        return ExitCode.MODEL_MISMATCH
    return ExitCode.INTERNAL_ERROR
