"""Interfaces manufactured from simulations."""

from typing import Dict, List, Tuple

from cp_verifier.model.errors import NotConverged
from cp_verifier.model.expr import Eq, Literal, Var
from cp_verifier.model.network import ROUTE_VAR
from cp_verifier.model.values import Value
from cp_verifier.simulator.trace import SimulationTrace
from cp_verifier.temporal.ops import Annotation, Globally, TemporalOp, Until


def _runs(row: Tuple[Value, ...]) -> List[Tuple[Value, int]]:
    """Split a row into (value, start) runs of equal consecutive values."""
    runs: List[Tuple[Value, int]] = []
    for t, value in enumerate(row):
        if not runs or runs[-1][0] != value:
            runs.append((value, t))
    return runs


def singleton_interface(trace: SimulationTrace) -> Annotation:
    """Build the interface that admits exactly ``σ(v)(t)`` at every time.

    Runs of equal states collapse into one Until segment; the converged
    state is held by a final Globally.

    Raises:
        NotConverged: If the trace has no fixed point.
    """
    if trace.converged_at is None:
        raise NotConverged("singleton interfaces need a converged trace")
    k = trace.converged_at
    by_node: Dict[str, TemporalOp] = {}
    for v in trace.nodes:
        runs = _runs(trace.states[v][: k + 1])
        last_value, _ = runs[-1]
        op: TemporalOp = Globally(Eq(Var(ROUTE_VAR), Literal(last_value)))
        for i in range(len(runs) - 2, -1, -1):
            value, _ = runs[i]
            op = Until(Eq(Var(ROUTE_VAR), Literal(value)), runs[i + 1][1], op)
        by_node[v] = op
    return Annotation(by_node)
