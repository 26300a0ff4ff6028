"""Implicitization of rational surfaces with base points, in exact arithmetic."""

__version__ = "0.1.0"
