"""Strawperson node for the time-free modular check."""

from .strawperson import strawperson_node

__all__ = ["strawperson_node"]
