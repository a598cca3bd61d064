"""
Schemas for the Validate node.
"""

from typing import List, Optional

from pydantic import BaseModel, Field

from cp_verifier.model.laws import MergeLawReport
from cp_verifier.model.network import Diagnostic


class ValidateData(BaseModel):
    """Data structure for validate node (stored at state level)."""
    ok: bool = Field(..., description="Whether no diagnostic was raised")
    diagnostics: List[Diagnostic] = Field(default_factory=list, description="Violated well-formedness rules")
    merge_laws: Optional[MergeLawReport] = Field(None, description="Sampled merge-law check, if requested")
