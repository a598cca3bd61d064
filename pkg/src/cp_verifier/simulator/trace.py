"""Simulation traces and their exports."""

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple

from cp_verifier.model.errors import NotConverged
from cp_verifier.model.serialization import value_to_json
from cp_verifier.model.values import Value, render_value


@dataclass(frozen=True)
class SimulationTrace:
    """Per-node route history; ``states[v][t]`` is the route at ``v`` at time ``t``.

    When ``converged_at`` is ``k`` the trace is recorded through ``k + 1``,
    so ``states[v][k] == states[v][k + 1]`` is visible in the trace itself.
    """

    nodes: Tuple[str, ...]
    states: Mapping[str, Tuple[Value, ...]]
    converged_at: Optional[int] = None

    @property
    def horizon(self) -> int:
        """Last recorded time index."""
        return len(self.states[self.nodes[0]]) - 1 if self.nodes else 0

    def at(self, t: int) -> Dict[str, Value]:
        return {v: self.state(v, t) for v in self.nodes}

    def state(self, v: str, t: int) -> Value:
        """Return ``σ(v)(t)``; past the horizon only if the trace converged."""
        row = self.states[v]
        if t < len(row):
            return row[t]
        if self.converged_at is None:
            raise NotConverged(f"time {t} is past the horizon {self.horizon} of a non-converged trace")
        return row[-1]

    def final(self) -> Dict[str, Value]:
        if self.converged_at is None:
            raise NotConverged("trace did not reach a fixed point")
        return self.at(self.converged_at)


def trace_from_history(nodes: Tuple[str, ...], history: List[Dict[str, Value]], converged_at: Optional[int]) -> SimulationTrace:
    states = {v: tuple(step[v] for step in history) for v in nodes}
    return SimulationTrace(nodes=nodes, states=states, converged_at=converged_at)


def render_trace_table(trace: SimulationTrace) -> str:
    """Render a time-by-node table of routes."""
    header = ["t", *trace.nodes]
    rows = [
        [str(t), *(render_value(trace.states[v][t]) for v in trace.nodes)]
        for t in range(trace.horizon + 1)
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]

    def line(cells: List[str]) -> str:
        return " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()

    out = [line(header), "-+-".join("-" * w for w in widths)]
    out += [line(r) for r in rows]
    if trace.converged_at is None:
        out.append(f"not converged within {trace.horizon} steps")
    else:
        out.append(f"converged at t={trace.converged_at}")
    return "\n".join(out)


def trace_to_json(trace: SimulationTrace) -> Dict[str, Any]:
    return {
        "nodes": list(trace.nodes),
        "converged_at": trace.converged_at,
        "horizon": trace.horizon,
        "states": {v: [value_to_json(x) for x in trace.states[v]] for v in trace.nodes},
        "rendered": {v: [render_value(x) for x in trace.states[v]] for v in trace.nodes},
    }
