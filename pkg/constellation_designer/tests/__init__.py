"""Tests for the constellation designer."""
