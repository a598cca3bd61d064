"""
Schemas for the Report node.
"""

from enum import IntEnum


class ExitStatus(IntEnum):
    """Process exit statuses."""
    PASS = 0
    COUNTEREXAMPLE = 1
    INPUT_ERROR = 2
    INCOMPLETE = 3
