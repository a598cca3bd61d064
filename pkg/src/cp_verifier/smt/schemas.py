"""Pydantic schemas for solver verdicts."""

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class VerdictKind(str, Enum):
    """Outcome of one validity query."""

    VALID = "valid"
    COUNTEREXAMPLE = "counterexample"
    UNKNOWN = "unknown"
    FAILURE = "failure"


class SolverVerdict(BaseModel):
    """Result of checking that a formula holds for all assignments."""

    kind: VerdictKind = Field(..., description="valid, counterexample, unknown or failure")
    label: str = Field(default="query", description="Query label used for dumps and logs")
    assignment: Dict[str, Any] = Field(
        default_factory=dict, description="Declared symbol -> Value, for counterexamples"
    )
    reason: Optional[str] = Field(default=None, description="Solver reason for unknown")
    detail: Optional[str] = Field(default=None, description="What went wrong, for failures")
    timed_out: bool = Field(default=False, description="Unknown because the time limit was hit")
    elapsed: float = Field(default=0.0, description="Wall-clock seconds spent in the solver")

    @property
    def is_valid(self) -> bool:
        return self.kind == VerdictKind.VALID

    @property
    def is_counterexample(self) -> bool:
        return self.kind == VerdictKind.COUNTEREXAMPLE
