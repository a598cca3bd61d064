"""Synchronous and bounded-delay execution of closed networks."""

import logging
import random
from typing import Callable, Dict, List, Optional

from cp_verifier.model.errors import NotClosed
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.network import Edge, NetworkInstance, fold_routes
from cp_verifier.model.values import Value
from cp_verifier.simulator.trace import SimulationTrace, trace_from_history

logger = logging.getLogger(__name__)

# schedule(edge, t, lo, hi) picks the sender state index in [lo, hi] read at step t -> t+1.
Schedule = Callable[[Edge, int, int, int], int]


def default_max_steps(n: NetworkInstance, delay: int = 0) -> int:
    return max(1, 2 * len(n.nodes) * (delay + 1))


def _initial_state(n: NetworkInstance) -> Dict[str, Value]:
    if not n.is_closed():
        raise NotClosed(f"{n.name} has symbolic inputs; close it before simulating")
    return {v: eval_expr(n.init[v], {}) for v in n.nodes}


def simulate(n: NetworkInstance, max_steps: Optional[int] = None) -> SimulationTrace:
    """Run the synchronous semantics until a global fixed point or ``max_steps``.

    Raises:
        NotClosed: If the network has symbolic variables or open init routes.
    """
    max_steps = default_max_steps(n) if max_steps is None else max_steps
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    init = _initial_state(n)
    history: List[Dict[str, Value]] = [init]
    converged_at: Optional[int] = None
    for t in range(max_steps):
        current = history[-1]
        nxt = {v: fold_routes(n, v, init[v], current) for v in n.nodes}
        history.append(nxt)
        if nxt == current:
            converged_at = t
            break
    if converged_at is None:
        logger.warning("⚠️  %s did not converge within %d steps", n.name, max_steps)
    else:
        logger.debug("%s converged at t=%d", n.name, converged_at)
    return trace_from_history(n.nodes, history, converged_at)


def delayed_simulate(
    n: NetworkInstance,
    delay: int,
    seed: int = 0,
    schedule: Optional[Schedule] = None,
    max_steps: Optional[int] = None,
) -> SimulationTrace:
    """Run with each edge reading one of the sender's last ``delay + 1`` states.

    Edges are visited in sorted order every step. Without an explicit
    ``schedule`` the window index is drawn from ``random.Random(seed)``.
    ``delay == 0`` reproduces :func:`simulate`.
    """
    if delay < 0:
        raise ValueError("delay must be nonnegative")
    max_steps = default_max_steps(n, delay) if max_steps is None else max_steps
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    if schedule is None:
        rng = random.Random(seed)

        def schedule(edge: Edge, t: int, lo: int, hi: int) -> int:
            return rng.randint(lo, hi)

    init = _initial_state(n)
    edges = sorted(n.topology.edges)
    history: List[Dict[str, Value]] = [init]
    converged_at: Optional[int] = None
    for t in range(max_steps):
        lo = max(0, t - delay)
        incoming: Dict[str, Dict[str, Value]] = {v: {} for v in n.nodes}
        for u, v in edges:
            k = schedule((u, v), t, lo, t)
            if not lo <= k <= t:
                raise ValueError(f"schedule chose index {k} outside [{lo}, {t}] for {u}->{v}")
            incoming[v][u] = history[k][u]
        nxt = {v: fold_routes(n, v, init[v], incoming[v]) for v in n.nodes}
        history.append(nxt)
        if all(history[j] == nxt for j in range(lo, t + 1)):
            k = t
            while k > 0 and history[k - 1] == nxt:
                k -= 1
            converged_at = k
            break
    if converged_at is None:
        logger.warning("⚠️  %s did not converge within %d delayed steps", n.name, max_steps)
    return trace_from_history(n.nodes, history, converged_at)
