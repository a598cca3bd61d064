"""Concrete execution of closed networks."""

from cp_verifier.simulator.interfaces import singleton_interface
from cp_verifier.simulator.simulate import delayed_simulate, simulate
from cp_verifier.simulator.trace import SimulationTrace, render_trace_table, trace_to_json

__all__ = [
    "SimulationTrace",
    "delayed_simulate",
    "render_trace_table",
    "simulate",
    "singleton_interface",
    "trace_to_json",
]
