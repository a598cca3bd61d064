"""
Check node: initial, inductive and safety conditions for every router.
"""

import logging
from typing import Any, Callable, Dict

from cp_verifier.checker import check_modular
from cp_verifier.checker.schemas import CheckReport
from cp_verifier.config import RunConfig, solver_from_config
from cp_verifier.model.errors import VerifierError
from cp_verifier.smt.client import SolverClient

from .schemas import CheckData

logger = logging.getLogger(__name__)

Checker = Callable[[Dict[str, Any], RunConfig, SolverClient], CheckReport]


def run_check(state: Dict[str, Any], checker: Checker) -> Dict[str, Any]:
    """
    Create a solver client, run ``checker`` and store its report.

    Missing solvers are solver errors; ill-formed inputs are input errors.

    Args:
        state: Current state containing the loaded inputs
        checker: Function producing the report

    Returns:
        Updated state with the report and check data
    """
    config = RunConfig.model_validate(state["config"])
    try:
        client = solver_from_config(config)
    except ValueError as e:
        logger.error("❌ %s", e)
        state["error"] = str(e)
        state["error_kind"] = "solver"
        return state

    try:
        report = checker(state, config, client)
    except VerifierError as e:
        logger.error("❌ %s check rejected the inputs: %s", config.mode, e)
        state["error"] = f"{type(e).__name__}: {e}"
        state["error_kind"] = "input"
        return state
    except Exception as e:
        logger.exception("❌ %s check failed", config.mode)
        state["error"] = f"{type(e).__name__}: {e}"
        state["error_kind"] = "internal"
        return state

    state["report"] = report.model_dump(mode="json")
    state["check"] = CheckData(
        mode=config.mode,
        solver=client.executable,
        timeout=client.timeout,
        jobs=config.jobs,
        dump_dir=str(client.dump_dir) if client.dump_dir else None,
    ).model_dump()
    return state


def _modular(state: Dict[str, Any], config: RunConfig, client: SolverClient) -> CheckReport:
    return check_modular(
        state["network"], state["interfaces"], state["properties"],
        client, delay=state.get("delay", 0), jobs=config.jobs,
    )


def check_node(state: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run the modular check on a worker pool.

    Args:
        state: Current state containing network, interfaces and properties

    Returns:
        Updated state with the check report
    """
    return run_check(state, _modular)
