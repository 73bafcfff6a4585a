"""
Services module for persistent storage.

This module contains the constellation look-up-table store interface and its
JSON-file implementation.
"""

from .lut_store import (
    JsonLutStore,
    LutStoreInterface,
    get_fixture_store,
    get_lut_store,
)

__all__ = [
    "JsonLutStore",
    "LutStoreInterface",
    "get_fixture_store",
    "get_lut_store",
]
