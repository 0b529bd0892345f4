"""
Command-line front end: solve, validate, convert, bench and oracle.
"""

from .exit_codes import ExitCode, exit_code_for
from .manifest import RunManifest, load_manifest, manifest_from_mapping

__all__ = [
    'ExitCode',
    'exit_code_for',
    'RunManifest',
    'load_manifest',
    'manifest_from_mapping',
]
