"""Load node for reading networks, interfaces and properties."""

from .load import load_node

__all__ = ["load_node"]
