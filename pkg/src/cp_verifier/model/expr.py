"""Policy expression AST.

One expression language is used for initial routes, transfer functions,
the merge function and every interface predicate. The simulator evaluates
it (``evaluate.eval_expr``) and the SMT encoder translates it
(``smt.encoder.SmtEncoder.encode_expr``).
"""

from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterator, Mapping, Tuple, Union

from cp_verifier.model.sorts import ValueSort
from cp_verifier.model.values import FALSE, TRUE, Value, int_value, strings_in


@dataclass(frozen=True)
class Literal:
    value: Value


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class FieldGet:
    expr: "Expr"
    name: str


@dataclass(frozen=True)
class RecordMake:
    fields: Tuple[Tuple[str, "Expr"], ...]


@dataclass(frozen=True)
class RecordWith:
    expr: "Expr"
    name: str
    value: "Expr"


@dataclass(frozen=True)
class If:
    cond: "Expr"
    then: "Expr"
    orelse: "Expr"


@dataclass(frozen=True)
class And:
    args: Tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    args: Tuple["Expr", ...]


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class Eq:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neq:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Lt:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Leq:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    """Subtraction; saturates at 0 on Int, wraps on bit-vectors."""

    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Min:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Max:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class SetContains:
    expr: "Expr"
    item: str


@dataclass(frozen=True)
class SetInsert:
    expr: "Expr"
    item: str


@dataclass(frozen=True)
class SetRemove:
    expr: "Expr"
    item: str


@dataclass(frozen=True)
class NoneOf:
    """The empty option over ``inner``."""

    inner: ValueSort


@dataclass(frozen=True)
class Some:
    expr: "Expr"


@dataclass(frozen=True)
class OptionCase:
    """Eliminate an option: ``none`` if empty, else ``some`` with ``var`` bound."""

    expr: "Expr"
    none: "Expr"
    var: str
    some: "Expr"


Expr = Union[
    Literal, Var, FieldGet, RecordMake, RecordWith, If, And, Or, Not, Eq, Neq, Lt, Leq,
    Add, Sub, Min, Max, SetContains, SetInsert, SetRemove, NoneOf, Some, OptionCase,
]

TRUE_EXPR = Literal(TRUE)
FALSE_EXPR = Literal(FALSE)

_BINARY = (Eq, Neq, Lt, Leq, Add, Sub, Min, Max)
_SET_OPS = (SetContains, SetInsert, SetRemove)


def children(expr: Expr) -> Iterator[Expr]:
    """Yield the direct subexpressions of ``expr``."""
    if isinstance(expr, (FieldGet, Some) + _SET_OPS):
        yield expr.expr
    elif isinstance(expr, RecordMake):
        for _, e in expr.fields:
            yield e
    elif isinstance(expr, RecordWith):
        yield expr.expr
        yield expr.value
    elif isinstance(expr, If):
        yield expr.cond
        yield expr.then
        yield expr.orelse
    elif isinstance(expr, (And, Or)):
        yield from expr.args
    elif isinstance(expr, Not):
        yield expr.arg
    elif isinstance(expr, _BINARY):
        yield expr.left
        yield expr.right
    elif isinstance(expr, OptionCase):
        yield expr.expr
        yield expr.none
        yield expr.some


def free_vars(expr: Expr) -> FrozenSet[str]:
    """Return the variables occurring free in ``expr``."""
    if isinstance(expr, Var):
        return frozenset({expr.name})
    if isinstance(expr, OptionCase):
        inner = free_vars(expr.some) - {expr.var}
        return free_vars(expr.expr) | free_vars(expr.none) | inner
    out: FrozenSet[str] = frozenset()
    for child in children(expr):
        out |= free_vars(child)
    return out


def string_literals(expr: Expr) -> FrozenSet[str]:
    """Return every literal string the expression can put into or test in a set."""
    out: FrozenSet[str] = frozenset()
    if isinstance(expr, _SET_OPS):
        out = frozenset({expr.item})
    elif isinstance(expr, Literal):
        out = strings_in(expr.value)
    for child in children(expr):
        out |= string_literals(child)
    return out


def substitute(expr: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace free variables by expressions.

    Replacement expressions are expected to be closed (literals, in
    practice), so no capture-avoidance is needed.
    """
    if not mapping:
        return expr
    if isinstance(expr, Var):
        return mapping.get(expr.name, expr)
    if isinstance(expr, (Literal, NoneOf)):
        return expr
    if isinstance(expr, OptionCase):
        inner = {k: v for k, v in mapping.items() if k != expr.var}
        return OptionCase(
            substitute(expr.expr, mapping),
            substitute(expr.none, mapping),
            expr.var,
            substitute(expr.some, inner),
        )
    return _rebuild(expr, lambda e: substitute(e, mapping))


def _rebuild(expr: Expr, fn: Callable[[Expr], Expr]) -> Expr:
    if isinstance(expr, FieldGet):
        return FieldGet(fn(expr.expr), expr.name)
    if isinstance(expr, RecordMake):
        return RecordMake(tuple((n, fn(e)) for n, e in expr.fields))
    if isinstance(expr, RecordWith):
        return RecordWith(fn(expr.expr), expr.name, fn(expr.value))
    if isinstance(expr, If):
        return If(fn(expr.cond), fn(expr.then), fn(expr.orelse))
    if isinstance(expr, (And, Or)):
        return type(expr)(tuple(fn(a) for a in expr.args))
    if isinstance(expr, Not):
        return Not(fn(expr.arg))
    if isinstance(expr, _BINARY):
        return type(expr)(fn(expr.left), fn(expr.right))
    if isinstance(expr, _SET_OPS):
        return type(expr)(fn(expr.expr), expr.item)
    if isinstance(expr, Some):
        return Some(fn(expr.expr))
    raise TypeError(f"cannot rebuild {type(expr).__name__}")


# Builders used by fixtures and tests.

def lit(value: Value) -> Literal:
    return Literal(value)


def nat(n: int) -> Literal:
    return Literal(int_value(n))


def get(expr: Union[Expr, str], *names: str) -> Expr:
    """Chain field projections; a string base is read as a variable."""
    out: Expr = Var(expr) if isinstance(expr, str) else expr
    for name in names:
        out = FieldGet(out, name)
    return out


def conj(*args: Expr) -> Expr:
    return args[0] if len(args) == 1 else And(tuple(args))


def disj(*args: Expr) -> Expr:
    return args[0] if len(args) == 1 else Or(tuple(args))


def implies(premise: Expr, conclusion: Expr) -> Expr:
    return Or((Not(premise), conclusion))


def gt(left: Expr, right: Expr) -> Expr:
    return Lt(right, left)


def geq(left: Expr, right: Expr) -> Expr:
    return Leq(right, left)


def is_none(expr: Expr) -> Expr:
    return OptionCase(expr, TRUE_EXPR, "_", FALSE_EXPR)


def is_some(expr: Expr) -> Expr:
    return OptionCase(expr, FALSE_EXPR, "_", TRUE_EXPR)


def has_route(expr: Expr, pred: Callable[[Expr], Expr], var: str = "r") -> Expr:
    """Hold iff the option is present and its payload satisfies ``pred``."""
    return OptionCase(expr, FALSE_EXPR, var, pred(Var(var)))


def all_routes(expr: Expr, pred: Callable[[Expr], Expr], var: str = "r") -> Expr:
    """Hold iff the option is empty or its payload satisfies ``pred``."""
    return OptionCase(expr, TRUE_EXPR, var, pred(Var(var)))


def map_route(expr: Expr, inner: ValueSort, fn: Callable[[Expr], Expr], var: str = "r") -> Expr:
    """Apply ``fn`` to a present payload, keeping the empty option empty."""
    return OptionCase(expr, NoneOf(inner), var, fn(Var(var)))
