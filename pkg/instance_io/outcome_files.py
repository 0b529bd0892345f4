"""
Per-instance outcome artifacts (YAML).

One document per instance holds every model run on it: status, bounds in
fixed-point units with their scale, the bound trace, elapsed time and the
decoded incumbent. Files are replaced atomically so an interrupted bench
run never leaves a half-written artifact behind.
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Union

import yaml

from core.errors import ParseError
from instance_io.results_table import ModelResult, ResultRow

logger = logging.getLogger(__name__)

OUTCOME_SUFFIX = ".outcome.yaml"


def outcome_path(out_dir: Union[str, Path], instance_name: str) -> Path:
    return Path(out_dir) / f"{instance_name}{OUTCOME_SUFFIX}"


def write_text_atomic(path: Union[str, Path], text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_outcome(path: Union[str, Path], row: ResultRow) -> None:
    document = {
        "instance": row.instance,
        "trucks": row.trucks,
        "drones": row.drones,
        "results": [result.to_dict() for result in row.results],
    }
    write_text_atomic(path, yaml.safe_dump(document, sort_keys=False))
    logger.debug(f"Wrote outcome file {path}")


def read_outcome(path: Union[str, Path]) -> ResultRow:
    """
    Raises:
        ParseError: the file is not a valid outcome document.
    """
    path = Path(path)
    try:
        document = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ParseError(f"invalid YAML in {path.name}: {e}", field="outcome") from e
    if not isinstance(document, dict) or "instance" not in document:
        raise ParseError(f"{path.name} is not an outcome document", field="instance")
    try:
        results = [ModelResult.from_dict(entry) for entry in document.get("results") or []]
        return ResultRow(
            instance=str(document["instance"]),
            trucks=int(document["trucks"]),
            drones=int(document["drones"]),
            results=results,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed outcome document {path.name}: {e}", field="results") from e
