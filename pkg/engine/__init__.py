"""
Anytime branch-and-bound engine over the constraint IR.
"""

from .bounds import lower_bound, root_lower_bound
from .circuit import CircuitFilterResult, circuit_filter
from .outcome import SearchStats, SolveOutcome, SolveStatus, TracePoint
from .propagators import PropagationEngine, PropagationResult, propagate
from .search import solve
from .state import DomainStore

__all__ = [
    'lower_bound',
    'root_lower_bound',
    'CircuitFilterResult',
    'circuit_filter',
    'SearchStats',
    'SolveOutcome',
    'SolveStatus',
    'TracePoint',
    'PropagationEngine',
    'PropagationResult',
    'propagate',
    'solve',
    'DomainStore',
]
