"""Seeded random values and expressions for law checks and differential tests."""

import random
from typing import Dict, List, Optional, Sequence

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
    BitVecSort,
    BoolSort,
    EnumSort,
    IntSort,
    OptionSort,
    RecordSort,
    StringSetSort,
    ValueSort,
)
from cp_verifier.model.values import Value, set_value


def sample_value(sort: ValueSort, rng: random.Random, alphabet: Sequence[str] = ()) -> Value:
    """Draw a value of ``sort``; small magnitudes so that ties are common."""
    if isinstance(sort, BoolSort):
        return Value(sort, rng.random() < 0.5)
    if isinstance(sort, IntSort):
        return Value(sort, rng.randint(0, 4))
    if isinstance(sort, BitVecSort):
        pool = [0, 1, 2, 100, 200, sort.modulus - 1]
        return Value(sort, rng.choice(pool) % sort.modulus)
    if isinstance(sort, EnumSort):
        return Value(sort, rng.choice(sort.labels))
    if isinstance(sort, StringSetSort):
        return set_value(x for x in alphabet if rng.random() < 0.5)
    if isinstance(sort, OptionSort):
        if rng.random() < 0.25:
            return Value(sort, None)
        return Value(sort, sample_value(sort.inner, rng, alphabet))
    if isinstance(sort, RecordSort):
        return Value(sort, tuple(sample_value(s, rng, alphabet) for _, s in sort.fields))
    raise TypeError(f"unknown sort {sort!r}")


class ExprGenerator:
    """Generate random well-sorted expressions over a typing environment."""

    def __init__(self, env: Dict[str, ValueSort], rng: random.Random, alphabet: Sequence[str]):
        self.env = env
        self.rng = rng
        self.alphabet = list(alphabet)
        self._bound = 0

    def _vars_of(self, sort: ValueSort, env: Dict[str, ValueSort]) -> List[str]:
        return [name for name, s in env.items() if s == sort]

    def leaf(self, sort: ValueSort, env: Dict[str, ValueSort]) -> Expr:
        names = self._vars_of(sort, env)
        if names and self.rng.random() < 0.6:
            return Var(self.rng.choice(names))
        return Literal(sample_value(sort, self.rng, self.alphabet))

    def expr(self, sort: ValueSort, depth: int = 3, env: Optional[Dict[str, ValueSort]] = None) -> Expr:
        env = self.env if env is None else env
        if depth <= 0 or self.rng.random() < 0.2:
            return self.leaf(sort, env)
        rng = self.rng
        choices = ["if", "case", "field"]
        if isinstance(sort, BoolSort):
            choices += ["and", "or", "not", "eq", "neq", "cmp", "contains"]
        elif isinstance(sort, (IntSort, BitVecSort)):
            choices += ["arith", "arith", "arith"]
        elif isinstance(sort, StringSetSort):
            choices += ["setop", "setop"]
        elif isinstance(sort, OptionSort):
            choices += ["some", "none"]
        elif isinstance(sort, RecordSort):
            choices += ["make", "with"]
        kind = rng.choice(choices)
        sub = depth - 1
        if kind == "if":
            return If(self.expr(BOOL, sub, env), self.expr(sort, sub, env), self.expr(sort, sub, env))
        if kind == "case":
            options = [s for s in env.values() if isinstance(s, OptionSort)]
            if not options:
                return self.leaf(sort, env)
            opt = rng.choice(options)
            self._bound += 1
            var = f"b{self._bound}"
            inner_env = {**env, var: opt.inner}
            return OptionCase(self.expr(opt, sub, env), self.expr(sort, sub, env), var, self.expr(sort, sub, inner_env))
        if kind == "field":
            records = [
                (name, s) for name, s in env.items()
                if isinstance(s, RecordSort) and any(fs == sort for _, fs in s.fields)
            ]
            if not records:
                return self.leaf(sort, env)
            name, record = rng.choice(records)
            field = rng.choice([f for f, fs in record.fields if fs == sort])
            return FieldGet(Var(name), field)
        if kind in ("and", "or"):
            args = tuple(self.expr(BOOL, sub, env) for _ in range(rng.randint(0, 3)))
            return And(args) if kind == "and" else Or(args)
        if kind == "not":
            return Not(self.expr(BOOL, sub, env))
        if kind in ("eq", "neq"):
            operand = rng.choice(list(env.values()))
            left, right = self.expr(operand, sub, env), self.expr(operand, sub, env)
            return Eq(left, right) if kind == "eq" else Neq(left, right)
        if kind == "cmp":
            numeric = [s for s in env.values() if isinstance(s, (IntSort, BitVecSort))]
            if not numeric:
                return self.leaf(sort, env)
            operand = rng.choice(numeric)
            op = rng.choice([Lt, Leq])
            return op(self.expr(operand, sub, env), self.expr(operand, sub, env))
        if kind == "contains":
            if not self.alphabet or not any(isinstance(s, StringSetSort) for s in env.values()):
                return self.leaf(sort, env)
            return SetContains(self.expr(StringSetSort(), sub, env), rng.choice(self.alphabet))
        if kind == "arith":
            op = rng.choice([Add, Sub, Min, Max])
            return op(self.expr(sort, sub, env), self.expr(sort, sub, env))
        if kind == "setop":
            if not self.alphabet:
                return self.leaf(sort, env)
            op = rng.choice([SetInsert, SetRemove])
            return op(self.expr(sort, sub, env), rng.choice(self.alphabet))
        if kind == "some":
            return Some(self.expr(sort.inner, sub, env))
        if kind == "none":
            return NoneOf(sort.inner)
        if kind == "make":
            return RecordMake(tuple((name, self.expr(fs, sub, env)) for name, fs in sort.fields))
        if kind == "with":
            name, fs = rng.choice(sort.fields)
            return RecordWith(self.expr(sort, sub, env), name, self.expr(fs, sub, env))
        return self.leaf(sort, env)
