"""
Process-wide settings read from the environment (and an optional .env file).

Environment variables:
    DRONESCHED_OUTPUT_DIR  default output directory for bench runs (results)
    DRONESCHED_LOG_LEVEL   default log level (INFO)
"""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

DEFAULT_OUTPUT_DIR = "results"
DEFAULT_LOG_LEVEL = "INFO"


def load_environment(env_path: Optional[Path] = None) -> None:
    """Load a .env file (current directory by default) without overriding the environment."""
    load_dotenv(dotenv_path=env_path, override=False)


def output_dir() -> Path:
    return Path(os.getenv("DRONESCHED_OUTPUT_DIR", DEFAULT_OUTPUT_DIR))


def log_level() -> str:
    return os.getenv("DRONESCHED_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging once for the process."""
    name = (level or log_level()).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.INFO),
        format=LOG_FORMAT,
    )
