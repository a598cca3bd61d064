"""
Simulate node: runs a closed network step by step.
"""

import logging
from typing import Any, Dict

from cp_verifier.config import RunConfig
from cp_verifier.model.errors import NotClosed
from cp_verifier.simulator import delayed_simulate, render_trace_table, simulate, trace_to_json
from cp_verifier.settings import default_max_steps

from .schemas import SimulateData

logger = logging.getLogger(__name__)


def simulate_node(state: Dict[str, Any]) -> Dict[str, Any]:
    """
    Simulate the network synchronously, or under bounded delay.

    Args:
        state: Current state containing the network

    Returns:
        Updated state with simulate data
    """
    config = RunConfig.model_validate(state["config"])
    n = state["network"]
    max_steps = config.max_steps or default_max_steps()
    try:
        delay = state.get("delay", 0)
        if delay:
            trace = delayed_simulate(n, delay, seed=config.seed, max_steps=max_steps)
        else:
            trace = simulate(n, max_steps=max_steps)
    except NotClosed as e:
        logger.error("❌ Cannot simulate %s: %s", n.name, e)
        state["error"] = f"NotClosed: {e}"
        state["error_kind"] = "input"
        return state

    if trace.converged_at is None:
        state.setdefault("warnings", []).append(f"not converged within {trace.horizon} steps")
    state["simulate"] = SimulateData(
        delay=delay,
        seed=config.seed,
        converged_at=trace.converged_at,
        horizon=trace.horizon,
        table=render_trace_table(trace),
        trace=trace_to_json(trace),
    ).model_dump()
    logger.info("✅ Simulated %s for %d steps", n.name, trace.horizon)
    return state
