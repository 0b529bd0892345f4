"""
Incumbent heuristics: greedy construction, neighbourhood moves and
ruin-and-recreate improvement.
"""

from .construction import construct_initial
from .local_search import improve, solution_key
from .moves import MoveKind, NeighborhoodMove, apply_move, neighborhood

__all__ = [
    'construct_initial',
    'improve',
    'solution_key',
    'MoveKind',
    'NeighborhoodMove',
    'apply_move',
    'neighborhood',
]
