"""Pydantic schemas for per-node verdicts and check reports."""

import math
from enum import Enum
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, Field


class ConditionKind(str, Enum):
    """Which proof obligation a result belongs to."""

    INITIAL = "initial"
    INDUCTIVE = "inductive"
    SAFETY = "safety"
    STRAWPERSON = "strawperson"
    STABLE = "stable"


class ConditionStatus(str, Enum):
    VALID = "valid"
    COUNTEREXAMPLE = "counterexample"
    UNKNOWN = "unknown"
    FAILURE = "failure"
    SKIPPED = "skipped"


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class Counterexample(BaseModel):
    """A concrete witness against one condition, with values rendered."""

    kind: ConditionKind
    time: Optional[int] = Field(default=None, description="Time the condition fails at, if timed")
    routes: Dict[str, str] = Field(default_factory=dict, description="Neighbor or node -> route")
    symbolics: Dict[str, str] = Field(default_factory=dict, description="Symbolic variable -> value")
    result: Optional[str] = Field(default=None, description="Route computed from the inputs, if any")


class ConditionResult(BaseModel):
    kind: ConditionKind
    status: ConditionStatus
    counterexample: Optional[Counterexample] = None
    reason: Optional[str] = Field(default=None, description="Unknown reason or failure detail")
    wall_seconds: float = 0.0


class NodeVerdict(BaseModel):
    """All condition results for one node, in checking order."""

    node: str
    conditions: List[ConditionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == ConditionStatus.VALID for c in self.conditions)

    @property
    def total_seconds(self) -> float:
        return sum(c.wall_seconds for c in self.conditions)

    @property
    def incomplete(self) -> bool:
        """Whether some condition ended unknown or in a solver failure."""
        return any(c.status in (ConditionStatus.UNKNOWN, ConditionStatus.FAILURE) for c in self.conditions)

    def condition(self, kind: ConditionKind) -> Optional[ConditionResult]:
        for c in self.conditions:
            if c.kind == kind:
                return c
        return None

    def failures(self) -> List[ConditionResult]:
        return [c for c in self.conditions if c.status not in (ConditionStatus.VALID, ConditionStatus.SKIPPED)]


def percentile(values: Sequence[float], p: float) -> float:
    """Nearest-rank percentile: the value at 1-based index ``ceil(p * n)``."""
    if not values:
        return 0.0
    ordered = sorted(values)
    rank = max(1, math.ceil(p * len(ordered)))
    return ordered[min(rank, len(ordered)) - 1]


class CheckReport(BaseModel):
    """Aggregated outcome of one checking run."""

    mode: str = Field(..., description="modular, monolithic or strawperson")
    network: str = "network"
    delay: int = 0
    unsound: bool = Field(default=False, description="True for the time-free strawperson check")
    overall: Outcome
    per_node: List[NodeVerdict]
    total_wall: float = 0.0
    median_node_time: float = 0.0
    p99_node_time: float = 0.0

    @classmethod
    def from_verdicts(
        cls,
        mode: str,
        verdicts: List[NodeVerdict],
        total_wall: float,
        network: str = "network",
        delay: int = 0,
        unsound: bool = False,
    ) -> "CheckReport":
        times = [v.total_seconds for v in verdicts]
        return cls(
            mode=mode,
            network=network,
            delay=delay,
            unsound=unsound,
            overall=Outcome.PASS if all(v.passed for v in verdicts) else Outcome.FAIL,
            per_node=verdicts,
            total_wall=total_wall,
            median_node_time=percentile(times, 0.5),
            p99_node_time=percentile(times, 0.99),
        )

    @property
    def passed(self) -> bool:
        return self.overall == Outcome.PASS

    @property
    def exit_status(self) -> int:
        """0 pass, 1 counterexample, 3 when any result is unknown or failed."""
        if any(v.incomplete for v in self.per_node):
            return 3
        return 0 if self.passed else 1

    def verdict(self, node: str) -> NodeVerdict:
        for v in self.per_node:
            if v.node == node:
                return v
        raise KeyError(node)

    def failing_nodes(self) -> List[str]:
        return [v.node for v in self.per_node if not v.passed]
