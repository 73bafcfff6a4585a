"""
Utility functions for the constellation designer.

validation.py depends on the engine modules and is imported directly.
"""

from .manifest import build_manifest, file_digest, write_manifest
from .output import format_value, read_rows, write_rows
from .rng import stream
from .search import bisect_threshold

__all__ = [
    "build_manifest",
    "file_digest",
    "write_manifest",
    "format_value",
    "read_rows",
    "write_rows",
    "stream",
    "bisect_threshold",
]
