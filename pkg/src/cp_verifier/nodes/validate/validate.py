"""
Validate node: sort checks, totality and optional merge-law sampling.

Diagnostics stop the run with an input error. Merge-law violations are
advisory and only produce warnings.
"""

import logging
from typing import Any, Dict, List

from cp_verifier.config import RunConfig
from cp_verifier.model.laws import check_merge_laws
from cp_verifier.model.network import Diagnostic, validate_network
from cp_verifier.temporal.lowering import check_annotation

from .schemas import ValidateData

logger = logging.getLogger(__name__)


def validate_node(state: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate the loaded network and annotations.

    Args:
        state: Current state containing the loaded inputs

    Returns:
        Updated state with validate data, or an input error
    """
    config = RunConfig.model_validate(state["config"])
    n = state["network"]
    logger.info("🔍 Validating %s", n.name)

    diagnostics: List[Diagnostic] = validate_network(n)
    if not diagnostics:
        for label in ("interfaces", "properties"):
            annotation = state.get(label)
            if annotation is not None:
                diagnostics += check_annotation(annotation, n, label)

    data = ValidateData(ok=not diagnostics, diagnostics=diagnostics)
    if not diagnostics and config.merge_samples:
        data.merge_laws = check_merge_laws(n, samples=config.merge_samples, seed=config.seed)
        if not data.merge_laws.ok:
            warnings = state.setdefault("warnings", [])
            for violation in (data.merge_laws.commutativity, data.merge_laws.associativity):
                if violation is not None:
                    warnings.append(f"merge violates {violation.law} on {', '.join(violation.routes)}")

    state["validate"] = data.model_dump()
    if diagnostics:
        for d in diagnostics:
            logger.error("❌ %s at %s: %s", d.kind, d.location, d.message)
        state["error"] = f"{len(diagnostics)} validation diagnostic(s)"
        state["error_kind"] = "input"
        return state

    logger.info("✅ %s is well-formed", n.name)
    return state
