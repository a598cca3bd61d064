"""Temporal operators over per-node route predicates."""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Mapping, Union

from cp_verifier.model.expr import Expr, string_literals


def _check_tau(tau: object) -> None:
    if not isinstance(tau, int) or isinstance(tau, bool) or tau < 0:
        raise ValueError(f"witness times must be concrete naturals, got {tau!r}")


@dataclass(frozen=True)
class Globally:
    """``pred`` holds at every time."""

    pred: Expr


@dataclass(frozen=True)
class Until:
    """``pred`` holds before ``tau``; ``then`` governs from ``tau`` on."""

    pred: Expr
    tau: int
    then: "TemporalOp"

    def __post_init__(self) -> None:
        _check_tau(self.tau)


@dataclass(frozen=True)
class Finally:
    """Anything before ``tau``; ``then`` governs from ``tau`` on."""

    tau: int
    then: "TemporalOp"

    def __post_init__(self) -> None:
        _check_tau(self.tau)


@dataclass(frozen=True)
class AndOp:
    left: "TemporalOp"
    right: "TemporalOp"


@dataclass(frozen=True)
class OrOp:
    left: "TemporalOp"
    right: "TemporalOp"


@dataclass(frozen=True)
class NotOp:
    arg: "TemporalOp"


TemporalOp = Union[Globally, Until, Finally, AndOp, OrOp, NotOp]


@dataclass(frozen=True)
class Annotation:
    """A temporal operator per node: interfaces and properties alike."""

    by_node: Mapping[str, TemporalOp]

    def __getitem__(self, node: str) -> TemporalOp:
        return self.by_node[node]

    def __contains__(self, node: object) -> bool:
        return node in self.by_node

    def nodes(self) -> Iterator[str]:
        return iter(self.by_node)

    def strings(self) -> FrozenSet[str]:
        out: FrozenSet[str] = frozenset()
        for op in self.by_node.values():
            for pred in predicates(op):
                out |= string_literals(pred)
        return out


def predicates(op: TemporalOp) -> Iterator[Expr]:
    """Yield every route predicate in ``op``."""
    if isinstance(op, Globally):
        yield op.pred
    elif isinstance(op, Until):
        yield op.pred
        yield from predicates(op.then)
    elif isinstance(op, Finally):
        yield from predicates(op.then)
    elif isinstance(op, (AndOp, OrOp)):
        yield from predicates(op.left)
        yield from predicates(op.right)
    elif isinstance(op, NotOp):
        yield from predicates(op.arg)


def max_witness(op: TemporalOp) -> int:
    """Return the largest witness time in ``op`` (0 if none)."""
    if isinstance(op, Globally):
        return 0
    if isinstance(op, (Until, Finally)):
        return max(op.tau, max_witness(op.then))
    if isinstance(op, (AndOp, OrOp)):
        return max(max_witness(op.left), max_witness(op.right))
    return max_witness(op.arg)


def is_time_free(op: TemporalOp) -> bool:
    """Return whether ``op`` is built from Globally and lifted connectives only."""
    if isinstance(op, Globally):
        return True
    if isinstance(op, (AndOp, OrOp)):
        return is_time_free(op.left) and is_time_free(op.right)
    if isinstance(op, NotOp):
        return is_time_free(op.arg)
    return False
