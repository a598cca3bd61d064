"""
Report node: decides the exit status and renders the output.

Input errors exit with 2. Solver problems, unknown verdicts and internal
errors exit with 3, which takes precedence over a counterexample.
"""

import logging
from typing import Any, Dict

from cp_verifier.checker.schemas import CheckReport
from cp_verifier.utils.formatting import format_run, run_to_json

from .schemas import ExitStatus

logger = logging.getLogger(__name__)


def exit_status(state: Dict[str, Any]) -> ExitStatus:
    if state.get("error"):
        return ExitStatus.INPUT_ERROR if state.get("error_kind") == "input" else ExitStatus.INCOMPLETE
    report = state.get("report")
    if report is not None:
        return ExitStatus(CheckReport.model_validate(report).exit_status)
    return ExitStatus.PASS


def _check_expectation(state: Dict[str, Any], status: ExitStatus) -> None:
    """Warn when a built-in benchmark's modular outcome differs from its design."""
    expected = state.get("expected")
    report = state.get("report")
    if not expected or not report or report.get("mode") != "modular":
        return
    if status not in (ExitStatus.PASS, ExitStatus.COUNTEREXAMPLE):
        return
    got = "pass" if status == ExitStatus.PASS else "fail"
    if got != expected:
        state.setdefault("warnings", []).append(f"benchmark is built to {expected} but the run ended in {got}")
        logger.warning("⚠️  benchmark expected %s, got %s", expected, got)


def report_node(state: Dict[str, Any]) -> Dict[str, Any]:
    """
    Compute the exit status and render the run.

    Args:
        state: Final state of the run

    Returns:
        Updated state with output and exit status
    """
    status = exit_status(state)
    _check_expectation(state, status)
    state["exit_status"] = int(status)
    fmt = state.get("config", {}).get("report_format", "text")
    state["output"] = run_to_json(state, int(status)) if fmt == "json" else format_run(state)
    logger.info("🎯 Run finished with exit status %d (%s)", status, status.name.lower())
    return state
