"""Reusable policy building blocks: route selection and common transfers."""

from typing import Callable, List, Sequence, Tuple

from cp_verifier.model.expr import (
    FALSE_EXPR,
    TRUE_EXPR,
    Add,
    And,
    Eq,
    Expr,
    If,
    Literal,
    Lt,
    NoneOf,
    Not,
    OptionCase,
    Or,
    RecordWith,
    SetContains,
    Var,
    get,
    nat,
)
from cp_verifier.model.network import MERGE_LEFT, MERGE_RIGHT, ROUTE_VAR
from cp_verifier.model.sorts import (
    BitVecSort,
    BoolSort,
    EnumSort,
    IntSort,
    OptionSort,
    RecordSort,
    StringSetSort,
    ValueSort,
)
from cp_verifier.model.values import enum_value

MAX = "max"
MIN = "min"

# Bound names for the two payloads inside the merge.
LEFT, RIGHT = "r1", "r2"


def _decide(a_wins: Expr, b_wins: Expr, rest: Expr) -> Expr:
    return If(a_wins, TRUE_EXPR, If(b_wins, FALSE_EXPR, rest))


def _field_order(name: str, sort: ValueSort, direction: str, alphabet: Sequence[str], rest: Expr) -> Expr:
    a, b = get(LEFT, name), get(RIGHT, name)
    if isinstance(sort, (IntSort, BitVecSort)):
        if direction == MAX:
            return _decide(Lt(b, a), Lt(a, b), rest)
        return _decide(Lt(a, b), Lt(b, a), rest)
    if isinstance(sort, BoolSort):
        return _decide(And((a, Not(b))), And((Not(a), b)), rest)
    if isinstance(sort, EnumSort):
        labels = [Literal(enum_value(sort, label)) for label in sort.labels]

        def earlier(x: Expr, y: Expr) -> Expr:
            pairs = [
                And((Eq(x, labels[i]), Eq(y, labels[j])))
                for i in range(len(labels)) for j in range(i + 1, len(labels))
            ]
            return Or(tuple(pairs))

        return _decide(earlier(a, b), earlier(b, a), rest)
    if isinstance(sort, StringSetSort):
        out = rest
        for item in reversed(list(alphabet)):
            has_a, has_b = SetContains(a, item), SetContains(b, item)
            out = _decide(And((Not(has_a), has_b)), And((has_a, Not(has_b))), out)
        return out
    raise ValueError(f"field {name!r} of sort {sort} cannot be ordered")


def lexicographic_merge(
    route_sort: OptionSort,
    keys: Sequence[Tuple[str, str]],
    alphabet: Sequence[str] = (),
) -> Expr:
    """Prefer any route over none, then compare record fields in order.

    ``keys`` lists ``(field, "max"|"min")`` pairs compared first. Every
    remaining field breaks ties (smaller numbers, true, earlier enum
    labels, and absent set members first), which makes the preference a
    total order, so the merge is commutative and associative.
    """
    record = route_sort.inner
    assert isinstance(record, RecordSort)
    order: List[Tuple[str, str]] = list(keys)
    seen = {name for name, _ in keys}
    order += [(name, MIN) for name in record.names if name not in seen]
    chain: Expr = TRUE_EXPR
    for name, direction in reversed(order):
        chain = _field_order(name, record.field(name), direction, sorted(alphabet), chain)
    s1, s2 = Var(MERGE_LEFT), Var(MERGE_RIGHT)
    return OptionCase(s1, s2, LEFT, OptionCase(s2, s1, RIGHT, If(chain, s1, s2)))


def bump(record: Expr, field: str = "len") -> Expr:
    """Add one hop to the path-length field."""
    return RecordWith(record, field, Add(get(record, field), nat(1)))


def update(record: Expr, **fields: Expr) -> Expr:
    out = record
    for name, value in fields.items():
        out = RecordWith(out, name, value)
    return out


def on_route(route_sort: OptionSort, body: Callable[[Expr], Expr], var: str = "r") -> Expr:
    """Transfer that drops the empty route and applies ``body`` to a present one.

    ``body`` returns an option-sorted expression, so it may also drop.
    """
    return OptionCase(Var(ROUTE_VAR), NoneOf(route_sort.inner), var, body(Var(var)))
