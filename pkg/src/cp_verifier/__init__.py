"""Modular control-plane verification with temporal interfaces.

Networks are routing algebras over a directed topology; interfaces give
every router a temporal invariant over logical time. Each router's
initial, inductive and safety conditions are discharged independently by
an external SMT solver.
"""

__version__ = "0.1.0"
