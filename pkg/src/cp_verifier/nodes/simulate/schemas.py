"""
Schemas for the Simulate node.
"""

from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class SimulateData(BaseModel):
    """Data structure for simulate node (stored at state level)."""
    delay: int = Field(0, description="Message delay bound")
    seed: int = Field(0, description="Schedule seed for delayed runs")
    converged_at: Optional[int] = Field(None, description="First step of the fixed point, if reached")
    horizon: int = Field(..., description="Last recorded step")
    table: str = Field(..., description="Rendered time-by-node table")
    trace: Dict[str, Any] = Field(..., description="Trace export")
