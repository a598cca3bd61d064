"""Sort inference for policy expressions."""

from typing import Mapping, Tuple

from cp_verifier.model.errors import SortError, UnboundVar
from cp_verifier.model.expr import (
    Add,
    And,
    Eq,
    Expr,
    FieldGet,
    If,
    Leq,
    Literal,
    Lt,
    Max,
    Min,
    Neq,
    NoneOf,
    Not,
    OptionCase,
    Or,
    RecordMake,
    RecordWith,
    SetContains,
    SetInsert,
    SetRemove,
    Some,
    Sub,
    Var,
)
from cp_verifier.model.sorts import (
    BOOL,
    STRING_SET,
    OptionSort,
    RecordSort,
    ValueSort,
    is_numeric,
)

SortEnv = Mapping[str, ValueSort]


def sort_check(expr: Expr, env: SortEnv, path: Tuple[str, ...] = ()) -> ValueSort:
    """Return the sort of ``expr`` under ``env``.

    Raises:
        SortError: On any ill-sorted subterm; ``path`` locates it.
        UnboundVar: If a variable is missing from ``env``.
    """
    if isinstance(expr, Literal):
        return expr.value.sort
    if isinstance(expr, Var):
        if expr.name not in env:
            raise UnboundVar(expr.name)
        return env[expr.name]
    if isinstance(expr, FieldGet):
        record = _record(expr.expr, env, path + ("get",))
        if not record.has(expr.name):
            raise SortError(path + ("get",), f"record with field {expr.name}", str(record))
        return record.field(expr.name)
    if isinstance(expr, RecordMake):
        return RecordSort(
            tuple((name, sort_check(e, env, path + (f"record.{name}",))) for name, e in expr.fields)
        )
    if isinstance(expr, RecordWith):
        record = _record(expr.expr, env, path + ("with",))
        if not record.has(expr.name):
            raise SortError(path + ("with",), f"record with field {expr.name}", str(record))
        _expect(expr.value, record.field(expr.name), env, path + (f"with.{expr.name}",))
        return record
    if isinstance(expr, If):
        _expect(expr.cond, BOOL, env, path + ("if.cond",))
        then = sort_check(expr.then, env, path + ("if.then",))
        _expect(expr.orelse, then, env, path + ("if.else",))
        return then
    if isinstance(expr, (And, Or)):
        label = type(expr).__name__.lower()
        for i, arg in enumerate(expr.args):
            _expect(arg, BOOL, env, path + (f"{label}.{i}",))
        return BOOL
    if isinstance(expr, Not):
        _expect(expr.arg, BOOL, env, path + ("not",))
        return BOOL
    if isinstance(expr, (Eq, Neq)):
        left = sort_check(expr.left, env, path + ("eq.left",))
        _expect(expr.right, left, env, path + ("eq.right",))
        return BOOL
    if isinstance(expr, (Lt, Leq)):
        _numeric_pair(expr.left, expr.right, env, path + (type(expr).__name__.lower(),))
        return BOOL
    if isinstance(expr, (Add, Sub, Min, Max)):
        return _numeric_pair(expr.left, expr.right, env, path + (type(expr).__name__.lower(),))
    if isinstance(expr, SetContains):
        _expect(expr.expr, STRING_SET, env, path + ("contains",))
        return BOOL
    if isinstance(expr, (SetInsert, SetRemove)):
        _expect(expr.expr, STRING_SET, env, path + (type(expr).__name__.lower(),))
        return STRING_SET
    if isinstance(expr, NoneOf):
        return OptionSort(expr.inner)
    if isinstance(expr, Some):
        return OptionSort(sort_check(expr.expr, env, path + ("some",)))
    if isinstance(expr, OptionCase):
        scrutinee = sort_check(expr.expr, env, path + ("case",))
        if not isinstance(scrutinee, OptionSort):
            raise SortError(path + ("case",), "Option", str(scrutinee))
        none = sort_check(expr.none, env, path + ("case.none",))
        inner_env = dict(env)
        inner_env[expr.var] = scrutinee.inner
        _expect(expr.some, none, inner_env, path + ("case.some",))
        return none
    raise TypeError(f"not an expression: {expr!r}")


def _expect(expr: Expr, sort: ValueSort, env: SortEnv, path: Tuple[str, ...]) -> None:
    found = sort_check(expr, env, path)
    if found != sort:
        raise SortError(path, str(sort), str(found))


def _record(expr: Expr, env: SortEnv, path: Tuple[str, ...]) -> RecordSort:
    found = sort_check(expr, env, path)
    if not isinstance(found, RecordSort):
        raise SortError(path, "Record", str(found))
    return found


def _numeric_pair(left: Expr, right: Expr, env: SortEnv, path: Tuple[str, ...]) -> ValueSort:
    sort = sort_check(left, env, path + ("left",))
    if not is_numeric(sort):
        raise SortError(path + ("left",), "Int or BitVec", str(sort))
    _expect(right, sort, env, path + ("right",))
    return sort
