"""
Configuration module for the constellation designer.

Exports the settings instance for easy access throughout the application.
"""

from .settings import settings, validate_settings

__all__ = ["settings", "validate_settings"]
