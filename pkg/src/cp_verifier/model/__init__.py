"""Routing model: sorts, values, the policy expression language and networks."""

from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.laws import MergeLawReport, check_merge_laws
from cp_verifier.model.network import (
    Diagnostic,
    NetworkInstance,
    SymbolicVar,
    Topology,
    close_network,
    fold_routes,
    validate_network,
)
from cp_verifier.model.typecheck import sort_check

__all__ = [
    "Diagnostic",
    "MergeLawReport",
    "NetworkInstance",
    "SymbolicVar",
    "Topology",
    "check_merge_laws",
    "close_network",
    "eval_expr",
    "fold_routes",
    "sort_check",
    "validate_network",
]
