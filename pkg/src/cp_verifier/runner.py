"""Runner for code-first usage of the verifier."""

import time
from typing import Any, Dict

from cp_verifier.config import RunConfig
from cp_verifier.graph import build_graph

_app = build_graph()


def run(config: RunConfig) -> Dict[str, Any]:
    """
    Run one verification through the graph.

    Args:
        config: Validated run configuration

    Returns:
        Dictionary with exit status, rendered output and the step data
    """
    start = time.perf_counter()
    final_state = _app.invoke({"config": config.model_dump()})
    return {
        "exit_status": final_state.get("exit_status", 3),
        "output": final_state.get("output", ""),
        "error": final_state.get("error"),
        "error_kind": final_state.get("error_kind"),
        "load": final_state.get("load"),
        "validate": final_state.get("validate"),
        "simulate": final_state.get("simulate"),
        "report": final_state.get("report"),
        "check": final_state.get("check"),
        "warnings": final_state.get("warnings", []),
        "elapsed": time.perf_counter() - start,
    }
