"""
Exhaustive oracle for tiny instances.
"""

from .brute_force import OracleResult, brute_force, count_feasible, enumerate_feasible

__all__ = [
    'OracleResult',
    'brute_force',
    'count_feasible',
    'enumerate_feasible',
]
