"""Utility modules for the verifier."""
