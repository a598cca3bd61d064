"""Report node for exit status and rendering."""

from .report import report_node

__all__ = ["report_node"]
