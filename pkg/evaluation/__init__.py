"""
Benchmark driver for instance suites.
"""

from .bench_runner import BenchReport, find_instances, run_bench, run_suite, solve_instance

__all__ = [
    'BenchReport',
    'find_instances',
    'run_bench',
    'run_suite',
    'solve_instance',
]
