"""
Schemas shared by the checking nodes.
"""

from typing import Optional

from pydantic import BaseModel, Field


class CheckData(BaseModel):
    """Run facts recorded next to a check report."""
    mode: str = Field(..., description="modular, monolithic or strawperson")
    solver: str = Field(..., description="Resolved solver executable")
    timeout: float = Field(..., description="Seconds per query")
    jobs: int = Field(1, description="Worker threads")
    dump_dir: Optional[str] = Field(None, description="Where solver scripts were written")
