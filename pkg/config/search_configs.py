"""
Search Configuration Registry for DroneSched.

Defines the engine settings for a solve run:
- Time budget, worker count and random seed
- Branching rule and restart policy
- Warm-start incumbent source

Usage:
    from config.search_configs import SearchPresetRegistry

    registry = SearchPresetRegistry()
    config = registry.get_config("quick")
    print(config.time_budget)
"""

from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional

from core.errors import ConfigError


class BranchingRule(str, Enum):
    MIN_DOMAIN_ARC = "min-domain-arc"
    COST_REGRET = "cost-regret"


class RestartPolicy(str, Enum):
    NONE = "none"
    LUBY = "luby"


class IncumbentSource(str, Enum):
    NONE = "none"
    HEURISTICS = "heuristics"


@dataclass(frozen=True)
class SearchConfig:
    """Settings for one engine run."""

    # Budget
    time_budget: Optional[float] = 60.0  # seconds; None = run to completion
    node_limit: Optional[int] = None
    worker_count: int = 1
    random_seed: int = 0

    # Search strategy
    branching: BranchingRule = BranchingRule.MIN_DOMAIN_ARC
    restart_policy: RestartPolicy = RestartPolicy.NONE
    luby_base: int = 64  # nodes per Luby unit
    max_restarts: int = 8

    # Warm start
    incumbent_source: IncumbentSource = IncumbentSource.HEURISTICS
    heuristic_iterations: int = 50

    def __post_init__(self):
        object.__setattr__(self, "branching", BranchingRule(self.branching))
        object.__setattr__(self, "restart_policy", RestartPolicy(self.restart_policy))
        object.__setattr__(self, "incumbent_source", IncumbentSource(self.incumbent_source))
        if self.time_budget is not None and self.time_budget <= 0:
            raise ConfigError(f"time_budget must be > 0 seconds, got {self.time_budget}")
        if self.worker_count < 1:
            raise ConfigError(f"worker_count must be >= 1, got {self.worker_count}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ConfigError(f"node_limit must be >= 1, got {self.node_limit}")
        if self.luby_base < 1 or self.max_restarts < 0 or self.heuristic_iterations < 0:
            raise ConfigError("luby_base must be >= 1; max_restarts and heuristic_iterations >= 0")

    def with_overrides(self, **overrides: Any) -> "SearchConfig":
        """Copy with the non-None overrides applied (validated again)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any], base: Optional["SearchConfig"] = None) -> "SearchConfig":
        """Build from a manifest mapping; unknown keys raise ConfigError."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError(f"unknown search settings {unknown}; expected a subset of {sorted(known)}")
        try:
            return replace(base or cls(), **dict(values))
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"invalid search settings: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = value.value if isinstance(value, Enum) else value
        return out


DEFAULT_CONFIG = SearchConfig(time_budget=60.0)

QUICK_CONFIG = SearchConfig(time_budget=5.0, heuristic_iterations=20)

# Runs until the tree is exhausted; meant for small instances and tests
EXHAUSTIVE_CONFIG = SearchConfig(time_budget=None, incumbent_source=IncumbentSource.HEURISTICS)

# One hour per model and instance, single worker
BENCHMARK_CONFIG = SearchConfig(time_budget=3600.0, heuristic_iterations=200)


class SearchPresetRegistry:
    """Registry of named search presets."""

    def __init__(self):
        self.configs: Dict[str, SearchConfig] = {
            "default": DEFAULT_CONFIG,
            "quick": QUICK_CONFIG,
            "exhaustive": EXHAUSTIVE_CONFIG,
            "benchmark": BENCHMARK_CONFIG,
        }

    def get_config(self, preset: str) -> SearchConfig:
        """Get the configuration of a preset; raises ConfigError for unknown names."""
        try:
            return self.configs[preset]
        except KeyError:
            raise ConfigError(
                f"unknown preset '{preset}'. Available: {', '.join(self.get_all_presets())}"
            ) from None

    def get_all_presets(self) -> List[str]:
        return list(self.configs.keys())

    def get_default_config(self) -> SearchConfig:
        return self.configs["default"]

    def __repr__(self) -> str:
        return f"SearchPresetRegistry(presets={self.get_all_presets()})"
