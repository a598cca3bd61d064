"""
Strawperson node: the time-free check, reported as unsound.
"""

from typing import Any, Dict

from cp_verifier.checker import check_strawperson
from cp_verifier.checker.schemas import CheckReport
from cp_verifier.config import RunConfig
from cp_verifier.nodes.check.check import run_check
from cp_verifier.smt.client import SolverClient


def _strawperson(state: Dict[str, Any], config: RunConfig, client: SolverClient) -> CheckReport:
    return check_strawperson(state["network"], state["interfaces"], client, jobs=config.jobs)


def strawperson_node(state: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run the time-free check and flag the result as unsound.

    Args:
        state: Current state containing network and interfaces

    Returns:
        Updated state with the (unsound) report
    """
    state = run_check(state, _strawperson)
    if state.get("report"):
        state.setdefault("warnings", []).append("time-free check: a pass does not mean the interfaces hold")
    return state
