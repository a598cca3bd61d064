"""JSON file format for sorts, values, expressions and networks.

Expressions are nested arrays ``["op", args...]``; bare strings are
variables, JSON booleans and naturals are Bool and Int literals, e.g.::

    ["if", ["lt", ["get", "s1", "lp"], ["get", "s2", "lp"]], "s2", "s1"]
"""

import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple, Union

import jsonschema

from cp_verifier.model.errors import ParseError
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
from cp_verifier.model.network import NetworkInstance, SymbolicVar, Topology, edge_label
from cp_verifier.model.sorts import (
    BOOL,
    INT,
    STRING_SET,
    BitVecSort,
    BoolSort,
    EnumSort,
    IntSort,
    OptionSort,
    RecordSort,
    StringSetSort,
    ValueSort,
)
from cp_verifier.model.values import Value, bool_value, int_value

Position = Tuple[Union[str, int], ...]

NETWORK_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["nodes", "edges", "route_sort", "init", "transfer", "merge"],
    "properties": {
        "name": {"type": "string"},
        "nodes": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "route_sort": {},
        "symbolics": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "sort"],
                "properties": {"name": {"type": "string"}, "sort": {}, "assume": {}},
                "additionalProperties": False,
            },
        },
        "init": {"type": "object"},
        "transfer": {"type": "object"},
        "merge": {},
    },
    "additionalProperties": False,
}


# Sorts

def sort_from_json(obj: Any, pos: Position = ()) -> ValueSort:
    if obj == "bool":
        return BOOL
    if obj == "int":
        return INT
    if obj == "stringset":
        return STRING_SET
    if isinstance(obj, dict) and len(obj) == 1:
        ((key, arg),) = obj.items()
        try:
            if key == "bitvec":
                if not isinstance(arg, int) or isinstance(arg, bool):
                    raise ParseError("bit-vector width must be an integer", pos + (key,))
                return BitVecSort(arg)
            if key == "enum":
                if not isinstance(arg, list) or not all(isinstance(x, str) for x in arg):
                    raise ParseError("enum labels must be a list of strings", pos + (key,))
                return EnumSort(tuple(arg))
            if key == "option":
                return OptionSort(sort_from_json(arg, pos + (key,)))
            if key == "record":
                if not isinstance(arg, dict):
                    raise ParseError("record fields must be an object", pos + (key,))
                return RecordSort(tuple((name, sort_from_json(s, pos + (key, name))) for name, s in arg.items()))
        except ValueError as e:
            raise ParseError(str(e), pos + (key,)) from None
    raise ParseError(f"unknown sort {json.dumps(obj)}", pos)


def sort_to_json(sort: ValueSort) -> Any:
    if isinstance(sort, BoolSort):
        return "bool"
    if isinstance(sort, IntSort):
        return "int"
    if isinstance(sort, StringSetSort):
        return "stringset"
    if isinstance(sort, BitVecSort):
        return {"bitvec": sort.width}
    if isinstance(sort, EnumSort):
        return {"enum": list(sort.labels)}
    if isinstance(sort, OptionSort):
        return {"option": sort_to_json(sort.inner)}
    if isinstance(sort, RecordSort):
        return {"record": {name: sort_to_json(s) for name, s in sort.fields}}
    raise TypeError(f"unknown sort {sort!r}")


# Values

def value_from_json(sort: ValueSort, obj: Any, pos: Position = ()) -> Value:
    def fail() -> ParseError:
        return ParseError(f"{json.dumps(obj)} is not a value of {sort}", pos)

    if isinstance(sort, BoolSort):
        if not isinstance(obj, bool):
            raise fail()
        return bool_value(obj)
    if isinstance(sort, (IntSort, BitVecSort)):
        if not isinstance(obj, int) or isinstance(obj, bool) or obj < 0:
            raise fail()
        if isinstance(sort, BitVecSort) and obj >= sort.modulus:
            raise fail()
        return Value(sort, obj)
    if isinstance(sort, EnumSort):
        if obj not in sort.labels:
            raise fail()
        return Value(sort, obj)
    if isinstance(sort, StringSetSort):
        if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
            raise fail()
        return Value(sort, frozenset(obj))
    if isinstance(sort, OptionSort):
        if obj is None:
            return Value(sort, None)
        if isinstance(obj, dict) and set(obj) == {"some"}:
            return Value(sort, value_from_json(sort.inner, obj["some"], pos + ("some",)))
        raise fail()
    if isinstance(sort, RecordSort):
        if not isinstance(obj, dict) or set(obj) != set(sort.names):
            raise fail()
        return Value(sort, tuple(value_from_json(s, obj[n], pos + (n,)) for n, s in sort.fields))
    raise TypeError(f"unknown sort {sort!r}")


def value_to_json(value: Value) -> Any:
    sort, data = value.sort, value.data
    if isinstance(sort, StringSetSort):
        return sorted(data)
    if isinstance(sort, OptionSort):
        return None if data is None else {"some": value_to_json(data)}
    if isinstance(sort, RecordSort):
        return {name: value_to_json(v) for name, v in zip(sort.names, data)}
    return data


# Expressions

_BINARY: Dict[str, Callable[[Expr, Expr], Expr]] = {
    "eq": Eq,
    "neq": Neq,
    "lt": Lt,
    "leq": Leq,
    "gt": lambda a, b: Lt(b, a),
    "geq": lambda a, b: Leq(b, a),
    "add": Add,
    "sub": Sub,
    "min": Min,
    "max": Max,
    "implies": lambda a, b: Or((Not(a), b)),
}
_SET_OPS = {"contains": SetContains, "insert": SetInsert, "remove": SetRemove}


def expr_from_json(obj: Any, pos: Position = ()) -> Expr:
    """Parse an expression, reporting the JSON path of any error."""
    if isinstance(obj, bool):
        return Literal(bool_value(obj))
    if isinstance(obj, int):
        if obj < 0:
            raise ParseError("integer literals must be nonnegative", pos)
        return Literal(int_value(obj))
    if isinstance(obj, str):
        return Var(obj)
    if not isinstance(obj, list) or not obj or not isinstance(obj[0], str):
        raise ParseError(f"expected an expression, found {json.dumps(obj)}", pos)

    op, args = obj[0], obj[1:]

    def sub(i: int) -> Expr:
        return expr_from_json(args[i], pos + (i + 1,))

    def arity(n: int) -> None:
        if len(args) != n:
            raise ParseError(f"operator {op!r} takes {n} arguments, got {len(args)}", pos)

    def name_at(i: int) -> str:
        if not isinstance(args[i], str):
            raise ParseError(f"operator {op!r} expects a name", pos + (i + 1,))
        return args[i]

    if op in _BINARY:
        arity(2)
        return _BINARY[op](sub(0), sub(1))
    if op in _SET_OPS:
        arity(2)
        return _SET_OPS[op](sub(0), name_at(1))
    if op in ("and", "or"):
        items = tuple(sub(i) for i in range(len(args)))
        return And(items) if op == "and" else Or(items)
    if op == "not":
        arity(1)
        return Not(sub(0))
    if op == "if":
        arity(3)
        return If(sub(0), sub(1), sub(2))
    if op == "get":
        if len(args) < 2:
            raise ParseError("operator 'get' takes an expression and field names", pos)
        out = sub(0)
        for i in range(1, len(args)):
            out = FieldGet(out, name_at(i))
        return out
    if op == "record":
        arity(1)
        if not isinstance(args[0], dict):
            raise ParseError("operator 'record' expects an object of fields", pos + (1,))
        return RecordMake(tuple((k, expr_from_json(v, pos + (1, k))) for k, v in args[0].items()))
    if op == "with":
        arity(3)
        return RecordWith(sub(0), name_at(1), sub(2))
    if op == "none":
        arity(1)
        return NoneOf(sort_from_json(args[0], pos + (1,)))
    if op == "some":
        arity(1)
        return Some(sub(0))
    if op == "case":
        arity(4)
        return OptionCase(sub(0), sub(1), name_at(2), sub(3))
    if op == "lit":
        arity(2)
        sort = sort_from_json(args[0], pos + (1,))
        return Literal(value_from_json(sort, args[1], pos + (2,)))
    if op == "bv":
        arity(2)
        n, width = args
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (n, width)):
            raise ParseError("operator 'bv' takes a value and a width", pos)
        try:
            sort = BitVecSort(width)
        except ValueError as e:
            raise ParseError(str(e), pos + (2,)) from None
        return Literal(value_from_json(sort, n, pos + (1,)))
    raise ParseError(f"unknown operator {op!r}", pos + (0,))


def expr_to_json(expr: Expr) -> Any:
    if isinstance(expr, Literal):
        sort = expr.value.sort
        if isinstance(sort, (BoolSort, IntSort)):
            return expr.value.data
        if isinstance(sort, BitVecSort):
            return ["bv", expr.value.data, sort.width]
        return ["lit", sort_to_json(sort), value_to_json(expr.value)]
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, FieldGet):
        return ["get", expr_to_json(expr.expr), expr.name]
    if isinstance(expr, RecordMake):
        return ["record", {name: expr_to_json(e) for name, e in expr.fields}]
    if isinstance(expr, RecordWith):
        return ["with", expr_to_json(expr.expr), expr.name, expr_to_json(expr.value)]
    if isinstance(expr, If):
        return ["if", expr_to_json(expr.cond), expr_to_json(expr.then), expr_to_json(expr.orelse)]
    if isinstance(expr, (And, Or)):
        return [type(expr).__name__.lower(), *(expr_to_json(a) for a in expr.args)]
    if isinstance(expr, Not):
        return ["not", expr_to_json(expr.arg)]
    if isinstance(expr, (Eq, Neq, Lt, Leq, Add, Sub, Min, Max)):
        return [type(expr).__name__.lower(), expr_to_json(expr.left), expr_to_json(expr.right)]
    if isinstance(expr, (SetContains, SetInsert, SetRemove)):
        op = {SetContains: "contains", SetInsert: "insert", SetRemove: "remove"}[type(expr)]
        return [op, expr_to_json(expr.expr), expr.item]
    if isinstance(expr, NoneOf):
        return ["none", sort_to_json(expr.inner)]
    if isinstance(expr, Some):
        return ["some", expr_to_json(expr.expr)]
    if isinstance(expr, OptionCase):
        return ["case", expr_to_json(expr.expr), expr_to_json(expr.none), expr.var, expr_to_json(expr.some)]
    raise TypeError(f"not an expression: {expr!r}")


# Networks

def parse_edge_key(key: str, pos: Position) -> Tuple[str, str]:
    parts = key.split("->")
    if len(parts) != 2 or not all(parts):
        raise ParseError(f"transfer key {key!r} is not of the form 'u->v'", pos)
    return parts[0], parts[1]


def network_from_json(obj: Any) -> NetworkInstance:
    """Build a network from a parsed JSON document.

    Raises:
        ParseError: On schema violations or malformed expressions.
    """
    try:
        jsonschema.validate(obj, NETWORK_SCHEMA)
    except jsonschema.ValidationError as e:
        raise ParseError(e.message, tuple(e.absolute_path)) from None

    symbolics: List[SymbolicVar] = []
    for i, item in enumerate(obj.get("symbolics", [])):
        here: Position = ("symbolics", i)
        assumption = item.get("assume")
        symbolics.append(
            SymbolicVar(
                name=item["name"],
                sort=sort_from_json(item["sort"], here + ("sort",)),
                assumption=None if assumption is None else expr_from_json(assumption, here + ("assume",)),
            )
        )
    transfer = {
        parse_edge_key(key, ("transfer", key)): expr_from_json(e, ("transfer", key))
        for key, e in obj["transfer"].items()
    }
    return NetworkInstance(
        topology=Topology(
            nodes=tuple(obj["nodes"]),
            edges=tuple((u, v) for u, v in obj["edges"]),
        ),
        route_sort=sort_from_json(obj["route_sort"], ("route_sort",)),
        init={v: expr_from_json(e, ("init", v)) for v, e in obj["init"].items()},
        transfer=transfer,
        merge=expr_from_json(obj["merge"], ("merge",)),
        symbolics=tuple(symbolics),
        name=obj.get("name", "network"),
    )


def network_to_json(n: NetworkInstance) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "name": n.name,
        "nodes": list(n.topology.nodes),
        "edges": [list(edge) for edge in n.topology.edges],
        "route_sort": sort_to_json(n.route_sort),
        "symbolics": [],
        "init": {v: expr_to_json(e) for v, e in n.init.items()},
        "transfer": {edge_label(edge): expr_to_json(e) for edge, e in n.transfer.items()},
        "merge": expr_to_json(n.merge),
    }
    for sym in n.symbolics:
        item: Dict[str, Any] = {"name": sym.name, "sort": sort_to_json(sym.sort)}
        if sym.assumption is not None:
            item["assume"] = expr_to_json(sym.assumption)
        out["symbolics"].append(item)
    return out


def load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})", (str(path),)) from None


def load_network(path: Union[str, Path]) -> NetworkInstance:
    return network_from_json(load_json(path))


def dump_json(obj: Any, path: Union[str, Path]) -> None:
    with open(path, "w") as f:
        json.dump(obj, f, indent=2, ensure_ascii=False)
        f.write("\n")
