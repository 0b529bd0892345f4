"""
Run manifests: which instances to solve, with which models and settings, and
where to write the results.

A manifest is either built from command-line flags or loaded from YAML:

    instances:
      - ../instances/example8.txt
    models: [mt-3idx, mt-2idx]
    preset: quick
    search:
      time_budget: 10
      random_seed: 0
    force_truck_use: false
    output: results/example8
    best_known:
      example8: 12.00

Relative instance and output paths are resolved against the manifest's
directory.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml

from config.search_configs import SearchConfig, SearchPresetRegistry
from config.settings import output_dir
from core.errors import ConfigError, ModelBuildError
from core.instance import Instance
from formulations.registry import get_model_spec, models_for_variant

logger = logging.getLogger(__name__)

MANIFEST_KEYS = {"instances", "models", "preset", "search", "force_truck_use", "output", "best_known"}


@dataclass
class RunManifest:
    instances: List[Path] = field(default_factory=list)
    models: List[str] = field(default_factory=list)  # empty: every model of the instance's variant
    search: SearchConfig = field(default_factory=SearchConfig)
    force_truck_use: bool = False
    output: Path = field(default_factory=output_dir)
    best_known: Optional[Dict[str, float]] = None

    def __post_init__(self):
        self.models = [m.lower() for m in self.models]
        for name in self.models:
            try:
                get_model_spec(name)
            except ModelBuildError as e:
                raise ConfigError(str(e)) from None

    def models_for(self, instance: Instance) -> List[str]:
        """
        Models to run on ``instance``.

        Raises:
            ModelBuildError: a selected model does not match the instance variant.
        """
        if not self.models:
            return models_for_variant(instance.variant)
        for name in self.models:
            spec = get_model_spec(name)
            if spec.variant is not instance.variant:
                raise ModelBuildError(
                    f"model {name} needs a {spec.variant.value} instance, "
                    f"{instance.name} is {instance.variant.value}"
                )
        return list(self.models)

    def with_overrides(
        self,
        models: Optional[List[str]] = None,
        output: Optional[Path] = None,
        force_truck_use: Optional[bool] = None,
        **search_overrides: Any,
    ) -> "RunManifest":
        """Copy with command-line flags applied on top of the manifest values."""
        return RunManifest(
            instances=list(self.instances),
            models=list(models) if models else list(self.models),
            search=self.search.with_overrides(**search_overrides),
            force_truck_use=self.force_truck_use if force_truck_use is None else force_truck_use,
            output=Path(output) if output is not None else self.output,
            best_known=self.best_known,
        )


def manifest_from_mapping(data: Mapping[str, Any], base_dir: Optional[Path] = None) -> RunManifest:
    """Build a manifest from parsed YAML; raises ConfigError on unknown or invalid keys."""
    if not isinstance(data, Mapping):
        raise ConfigError("a manifest must be a mapping")
    unknown = sorted(set(data) - MANIFEST_KEYS)
    if unknown:
        raise ConfigError(f"unknown manifest keys {unknown}; expected a subset of {sorted(MANIFEST_KEYS)}")
    base_dir = base_dir or Path(".")

    def resolve(value: Union[str, Path]) -> Path:
        path = Path(value)
        return path if path.is_absolute() else base_dir / path

    base = SearchPresetRegistry().get_config(data.get("preset", "default"))
    search = SearchConfig.from_mapping(data.get("search") or {}, base=base)
    models = data.get("models") or []
    if isinstance(models, str):
        models = [models]
    best_known = data.get("best_known")
    if best_known is not None:
        if not isinstance(best_known, Mapping):
            raise ConfigError("best_known must map instance names to values")
        best_known = {str(k): float(v) for k, v in best_known.items()}

    return RunManifest(
        instances=[resolve(p) for p in data.get("instances") or []],
        models=[str(m) for m in models],
        search=search,
        force_truck_use=bool(data.get("force_truck_use", False)),
        output=resolve(data["output"]) if data.get("output") else output_dir(),
        best_known=best_known,
    )


def load_manifest(path: Union[str, Path]) -> RunManifest:
    """
    Load a YAML run manifest.

    Raises:
        ConfigError: invalid YAML or manifest content.
        OSError: unreadable file.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in manifest {path}: {e}") from e
    manifest = manifest_from_mapping(data, base_dir=path.parent)
    logger.info(f"Loaded manifest {path}: {len(manifest.instances)} instances, models={manifest.models or 'auto'}")
    return manifest
