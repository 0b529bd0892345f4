"""
Configuration module for DroneSched.

Contains the search configuration, its preset registry and environment settings.
"""

from .search_configs import (
    BranchingRule,
    IncumbentSource,
    RestartPolicy,
    SearchConfig,
    SearchPresetRegistry,
    DEFAULT_CONFIG,
    QUICK_CONFIG,
    EXHAUSTIVE_CONFIG,
    BENCHMARK_CONFIG,
)
from .settings import configure_logging, load_environment, output_dir

__all__ = [
    'BranchingRule',
    'IncumbentSource',
    'RestartPolicy',
    'SearchConfig',
    'SearchPresetRegistry',
    'DEFAULT_CONFIG',
    'QUICK_CONFIG',
    'EXHAUSTIVE_CONFIG',
    'BENCHMARK_CONFIG',
    'configure_logging',
    'load_environment',
    'output_dir',
]
