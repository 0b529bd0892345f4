"""
Registry of the four formulations, keyed by their CLI names.

Usage:
    from formulations.registry import build_model, models_for_variant

    for name in models_for_variant(instance.variant):
        model = build_model(name, instance)
"""

from dataclasses import dataclass
from typing import Callable, Dict, List

from core.errors import ModelBuildError
from core.instance import Instance, Variant
from formulations.ir import ConstraintModel
from formulations.min_cost import build_mc_2idx, build_mc_3idx
from formulations.min_time import build_mt_2idx, build_mt_3idx


@dataclass(frozen=True)
class ModelSpec:
    name: str
    variant: Variant
    builder: Callable[..., ConstraintModel]
    description: str


MODEL_REGISTRY: Dict[str, ModelSpec] = {
    "mt-3idx": ModelSpec("mt-3idx", Variant.MIN_TIME, build_mt_3idx, "min-time, one arc layer per truck"),
    "mt-2idx": ModelSpec("mt-2idx", Variant.MIN_TIME, build_mt_2idx, "min-time, giant tour with arrival times"),
    "mc-3idx": ModelSpec("mc-3idx", Variant.MIN_COST, build_mc_3idx, "min-cost, one arc layer per truck"),
    "mc-2idx": ModelSpec("mc-2idx", Variant.MIN_COST, build_mc_2idx, "min-cost, giant tour with load and time chains"),
}


def get_model_spec(name: str) -> ModelSpec:
    try:
        return MODEL_REGISTRY[name.lower()]
    except KeyError:
        raise ModelBuildError(
            f"unknown model '{name}'. Available: {', '.join(MODEL_REGISTRY)}"
        ) from None


def models_for_variant(variant: Variant) -> List[str]:
    """Model names applicable to an instance variant, in registry order."""
    return [name for name, spec in MODEL_REGISTRY.items() if spec.variant is Variant(variant)]


def build_model(name: str, instance: Instance, force_truck_use: bool = False) -> ConstraintModel:
    """Build the named model; raises ModelBuildError on unknown name or variant mismatch."""
    spec = get_model_spec(name)
    return spec.builder(instance, force_truck_use=force_truck_use)
