"""Monolithic node for the stable-state baseline."""

from .monolithic import monolithic_node

__all__ = ["monolithic_node"]
