"""Temporal interfaces and properties."""

from cp_verifier.temporal.lowering import apply_at, check_annotation, erase_temporal, lower_at, lower_symbolic
from cp_verifier.temporal.ops import AndOp, Annotation, Finally, Globally, NotOp, OrOp, TemporalOp, Until

__all__ = [
    "AndOp",
    "Annotation",
    "Finally",
    "Globally",
    "NotOp",
    "OrOp",
    "TemporalOp",
    "Until",
    "apply_at",
    "check_annotation",
    "erase_temporal",
    "lower_at",
    "lower_symbolic",
]
