"""
Schemas for the Load node.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class LoadData(BaseModel):
    """Data structure for load node (stored at state level)."""
    source: str = Field(..., description="'files' or 'bench'")
    network: str = Field(..., description="Network name")
    nodes: int = Field(..., description="Number of routers")
    edges: int = Field(..., description="Number of directed edges")
    symbolics: List[str] = Field(default_factory=list, description="Symbolic variable names")
    closed: bool = Field(..., description="Whether the network has no symbolic inputs")
    fixture: Optional[str] = Field(None, description="Benchmark fixture name")
    expected: Optional[str] = Field(None, description="Outcome the benchmark is built for")
    dumped: Dict[str, str] = Field(default_factory=dict, description="Fixture files written, by kind")
