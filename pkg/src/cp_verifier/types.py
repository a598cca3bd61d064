"""State carried through the verification graph."""

from typing import Any, Dict, List, Optional

from typing_extensions import TypedDict

from cp_verifier.model.network import NetworkInstance
from cp_verifier.temporal.ops import Annotation


class State(TypedDict, total=False):
    """State for the LangGraph."""

    # Input
    config: Dict[str, Any]  # RunConfig.model_dump()

    # Loaded inputs
    network: Optional[NetworkInstance]
    interfaces: Optional[Annotation]
    properties: Optional[Annotation]
    expected: Optional[str]  # pass/fail for built-in benchmarks
    delay: int  # effective message delay bound
    load: Optional[Dict[str, Any]]  # LoadData

    # Per-step results
    validate: Optional[Dict[str, Any]]  # ValidateData
    simulate: Optional[Dict[str, Any]]  # SimulateData
    report: Optional[Dict[str, Any]]  # CheckReport
    check: Optional[Dict[str, Any]]  # CheckData

    # Output
    output: str
    exit_status: int
    warnings: List[str]

    # Errors
    error: Optional[str]
    error_kind: Optional[str]  # input | solver | internal
