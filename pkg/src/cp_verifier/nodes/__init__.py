"""Nodes of the verification graph."""
