"""Check node for the modular temporal check."""

from .check import check_node

__all__ = ["check_node"]
