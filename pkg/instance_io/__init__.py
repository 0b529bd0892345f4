"""
Instance and solution documents, coordinate converters, random generators,
results tables and outcome artifacts.
"""

from .converters import ConverterParams, DroneMetric, RoundingRule, convert_coordinates, convert_file, convert_text
from .generators import random_min_cost, random_min_time, random_suite
from .native_format import parse_native, read_instance, serialize_native, write_instance
from .outcome_files import outcome_path, read_outcome, write_outcome
from .results_table import ModelResult, ResultRow, emit_results_table, parse_results_table
from .solution_format import parse_solution, read_solution, serialize_solution, write_solution

__all__ = [
    'ConverterParams',
    'DroneMetric',
    'RoundingRule',
    'convert_coordinates',
    'convert_file',
    'convert_text',
    'random_min_cost',
    'random_min_time',
    'random_suite',
    'parse_native',
    'read_instance',
    'serialize_native',
    'write_instance',
    'outcome_path',
    'read_outcome',
    'write_outcome',
    'ModelResult',
    'ResultRow',
    'emit_results_table',
    'parse_results_table',
    'parse_solution',
    'read_solution',
    'serialize_solution',
    'write_solution',
]
