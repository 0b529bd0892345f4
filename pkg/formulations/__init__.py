"""
Constraint formulations of the min-time and min-cost problems over a small
routing-specialised IR, plus assignment decoding.
"""

from .decode import decode_solution, encode_solution
from .ir import (
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
    check_assignment,
    evaluate_objective,
)
from .min_cost import build_mc_2idx, build_mc_3idx
from .min_time import build_mt_2idx, build_mt_3idx
from .registry import MODEL_REGISTRY, build_model, models_for_variant

__all__ = [
    'decode_solution',
    'encode_solution',
    'Circuit',
    'ConstraintModel',
    'ExactlyOne',
    'Implication',
    'LinearEq',
    'LinearLe',
    'LinearTerm',
    'Literal',
    'MaxBound',
    'MultipleCircuit',
    'check_assignment',
    'evaluate_objective',
    'build_mc_2idx',
    'build_mc_3idx',
    'build_mt_2idx',
    'build_mt_3idx',
    'MODEL_REGISTRY',
    'build_model',
    'models_for_variant',
]
