"""Lowering temporal operators to route predicates."""

from typing import List, Mapping

from cp_verifier.model.errors import SortError, UnboundVar, UnsupportedShape
from cp_verifier.model.expr import (
    TRUE_EXPR,
    And,
    Expr,
    If,
    Lt,
    Not,
    Or,
    Var,
    nat,
)
from cp_verifier.model.network import ROUTE_VAR, TIME_VAR, Diagnostic, NetworkInstance
from cp_verifier.model.sorts import BOOL, ValueSort
from cp_verifier.model.typecheck import sort_check
from cp_verifier.temporal.ops import (
    AndOp,
    Annotation,
    Finally,
    Globally,
    NotOp,
    OrOp,
    TemporalOp,
    Until,
    predicates,
)


def apply_at(op: TemporalOp, t: int) -> Expr:
    """Return the predicate ``op`` denotes at concrete time ``t``."""
    if isinstance(op, Globally):
        return op.pred
    if isinstance(op, Until):
        return op.pred if t < op.tau else apply_at(op.then, t)
    if isinstance(op, Finally):
        return TRUE_EXPR if t < op.tau else apply_at(op.then, t)
    if isinstance(op, AndOp):
        return And((apply_at(op.left, t), apply_at(op.right, t)))
    if isinstance(op, OrOp):
        return Or((apply_at(op.left, t), apply_at(op.right, t)))
    if isinstance(op, NotOp):
        return Not(apply_at(op.arg, t))
    raise TypeError(f"not a temporal operator: {op!r}")


def lower_at(op: TemporalOp, time: Expr) -> Expr:
    """Return a predicate over ``s`` that equals ``op`` at the Int-sorted ``time``."""
    if isinstance(op, Globally):
        return op.pred
    if isinstance(op, Until):
        return If(Lt(time, nat(op.tau)), op.pred, lower_at(op.then, time))
    if isinstance(op, Finally):
        return If(Lt(time, nat(op.tau)), TRUE_EXPR, lower_at(op.then, time))
    if isinstance(op, AndOp):
        return And((lower_at(op.left, time), lower_at(op.right, time)))
    if isinstance(op, OrOp):
        return Or((lower_at(op.left, time), lower_at(op.right, time)))
    if isinstance(op, NotOp):
        return Not(lower_at(op.arg, time))
    raise TypeError(f"not a temporal operator: {op!r}")


def lower_symbolic(op: TemporalOp, time_var: str = TIME_VAR) -> Expr:
    """Lower ``op`` to a case analysis over the Int variable ``time_var``."""
    return lower_at(op, Var(time_var))


def erase_temporal(op: TemporalOp) -> Expr:
    """Return the eventual predicate of a single-witness operator.

    Raises:
        UnsupportedShape: For negations and nested witness chains.
    """
    if isinstance(op, Globally):
        return op.pred
    if isinstance(op, (Until, Finally)) and isinstance(op.then, Globally):
        return op.then.pred
    if isinstance(op, AndOp):
        return And((erase_temporal(op.left), erase_temporal(op.right)))
    if isinstance(op, OrOp):
        return Or((erase_temporal(op.left), erase_temporal(op.right)))
    raise UnsupportedShape(f"cannot erase time from {type(op).__name__}")


def globally(pred: Expr = TRUE_EXPR) -> Globally:
    return Globally(pred)


def check_annotation(annotation: Annotation, n: NetworkInstance, label: str = "annotation") -> List[Diagnostic]:
    """Check totality over the network's nodes and that every predicate is Bool over ``s``."""
    diags: List[Diagnostic] = []
    env: Mapping[str, ValueSort] = {**n.symbolic_sorts(), ROUTE_VAR: n.route_sort}
    for v in n.nodes:
        if v not in annotation:
            diags.append(Diagnostic(kind="MissingAnnotation", location=v, message=f"{label} has no entry for node"))
    for v in annotation.nodes():
        if v not in n.nodes:
            diags.append(Diagnostic(kind="UnknownNode", location=v, message=f"{label} mentions an undeclared node"))
            continue
        for pred in predicates(annotation[v]):
            try:
                found = sort_check(pred, env)
            except (SortError, UnboundVar) as e:
                diags.append(Diagnostic(kind="SortDiagnostic", location=f"{label} {v}", message=str(e)))
                continue
            if found != BOOL:
                diags.append(Diagnostic(kind="SortDiagnostic", location=f"{label} {v}", message=f"predicate has sort {found}"))
    return diags
