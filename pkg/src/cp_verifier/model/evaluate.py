"""Concrete evaluation of policy expressions."""

from typing import Mapping

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
from cp_verifier.model.errors import UnboundVar
from cp_verifier.model.sorts import BitVecSort, RecordSort
from cp_verifier.model.values import (
    Value,
    bool_value,
    none_value,
    set_value,
    some_value,
    with_field,
)

ValueEnv = Mapping[str, Value]


def eval_expr(expr: Expr, env: ValueEnv) -> Value:
    """Evaluate a well-sorted expression under a binding of its free variables."""
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, Var):
        try:
            return env[expr.name]
        except KeyError:
            raise UnboundVar(expr.name) from None
    if isinstance(expr, FieldGet):
        return eval_expr(expr.expr, env).field(expr.name)
    if isinstance(expr, RecordMake):
        values = tuple(eval_expr(e, env) for _, e in expr.fields)
        sort = RecordSort(tuple((name, v.sort) for (name, _), v in zip(expr.fields, values)))
        return Value(sort, values)
    if isinstance(expr, RecordWith):
        return with_field(eval_expr(expr.expr, env), expr.name, eval_expr(expr.value, env))
    if isinstance(expr, If):
        branch = expr.then if eval_expr(expr.cond, env).data else expr.orelse
        return eval_expr(branch, env)
    if isinstance(expr, And):
        return bool_value(all(eval_expr(a, env).data for a in expr.args))
    if isinstance(expr, Or):
        return bool_value(any(eval_expr(a, env).data for a in expr.args))
    if isinstance(expr, Not):
        return bool_value(not eval_expr(expr.arg, env).data)
    if isinstance(expr, Eq):
        return bool_value(eval_expr(expr.left, env) == eval_expr(expr.right, env))
    if isinstance(expr, Neq):
        return bool_value(eval_expr(expr.left, env) != eval_expr(expr.right, env))
    if isinstance(expr, (Lt, Leq, Add, Sub, Min, Max)):
        return _arith(expr, eval_expr(expr.left, env), eval_expr(expr.right, env))
    if isinstance(expr, SetContains):
        return bool_value(expr.item in eval_expr(expr.expr, env).data)
    if isinstance(expr, SetInsert):
        return set_value(eval_expr(expr.expr, env).data | {expr.item})
    if isinstance(expr, SetRemove):
        return set_value(eval_expr(expr.expr, env).data - {expr.item})
    if isinstance(expr, NoneOf):
        return none_value(expr.inner)
    if isinstance(expr, Some):
        return some_value(eval_expr(expr.expr, env))
    if isinstance(expr, OptionCase):
        option = eval_expr(expr.expr, env)
        if option.data is None:
            return eval_expr(expr.none, env)
        inner = dict(env)
        inner[expr.var] = option.data
        return eval_expr(expr.some, inner)
    raise TypeError(f"not an expression: {expr!r}")


def _arith(expr: Expr, left: Value, right: Value) -> Value:
    a, b = left.data, right.data
    if isinstance(expr, Lt):
        return bool_value(a < b)
    if isinstance(expr, Leq):
        return bool_value(a <= b)
    if isinstance(expr, Min):
        return left if a <= b else right
    if isinstance(expr, Max):
        return left if a >= b else right
    sort = left.sort
    if isinstance(expr, Add):
        n = a + b
    else:
        n = a - b
    if isinstance(sort, BitVecSort):
        return Value(sort, n % sort.modulus)
    return Value(sort, max(n, 0))
