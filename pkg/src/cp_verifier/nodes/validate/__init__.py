"""Validate node for network and annotation well-formedness."""

from .validate import validate_node

__all__ = ["validate_node"]
