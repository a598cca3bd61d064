"""Simulate node for concrete runs of closed networks."""

from .simulate import simulate_node

__all__ = ["simulate_node"]
