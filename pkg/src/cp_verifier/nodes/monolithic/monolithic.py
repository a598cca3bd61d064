"""
Monolithic node: one query over the stable states of the whole network.

Properties are erased to their eventual predicates first; shapes that
cannot be erased are input errors.
"""

from typing import Any, Dict

from cp_verifier.checker.schemas import CheckReport
from cp_verifier.config import RunConfig
from cp_verifier.monolithic import monolithic_report
from cp_verifier.nodes.check.check import run_check
from cp_verifier.smt.client import SolverClient


def _monolithic(state: Dict[str, Any], config: RunConfig, client: SolverClient) -> CheckReport:
    return monolithic_report(state["network"], state["properties"], client)


def monolithic_node(state: Dict[str, Any]) -> Dict[str, Any]:
    return run_check(state, _monolithic)
