"""Exact deformed-cycle engine at the fourth root of unity."""

__version__ = "0.1.0"
