"""JSON format for interface and property annotations.

Each node maps to an operator object such as
``{"op": "until", "pred": ..., "tau": 1, "then": {"op": "globally", "pred": ...}}``.
Short names ``G``, ``F`` and ``U`` are accepted on input.
"""

from pathlib import Path
from typing import Any, Dict, Union

from cp_verifier.model.errors import ParseError
from cp_verifier.model.serialization import Position, expr_from_json, expr_to_json, load_json
from cp_verifier.temporal.ops import AndOp, Annotation, Finally, Globally, NotOp, OrOp, TemporalOp, Until

_ALIASES = {"G": "globally", "F": "finally", "U": "until"}


def op_from_json(obj: Any, pos: Position = ()) -> TemporalOp:
    if not isinstance(obj, dict) or "op" not in obj:
        raise ParseError("expected an object with an 'op' key", pos)
    kind = _ALIASES.get(obj["op"], obj["op"])

    def field(key: str) -> Any:
        if key not in obj:
            raise ParseError(f"operator {kind!r} needs {key!r}", pos)
        return obj[key]

    def tau() -> int:
        value = field("tau")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ParseError("witness time must be a natural number", pos + ("tau",))
        return value

    if kind == "globally":
        return Globally(expr_from_json(field("pred"), pos + ("pred",)))
    if kind == "until":
        return Until(expr_from_json(field("pred"), pos + ("pred",)), tau(), op_from_json(field("then"), pos + ("then",)))
    if kind == "finally":
        return Finally(tau(), op_from_json(field("then"), pos + ("then",)))
    if kind in ("and", "or"):
        args = field("args")
        if not isinstance(args, list) or len(args) < 2:
            raise ParseError(f"operator {kind!r} needs at least two args", pos + ("args",))
        ops = [op_from_json(a, pos + ("args", i)) for i, a in enumerate(args)]
        out = ops[0]
        for nxt in ops[1:]:
            out = AndOp(out, nxt) if kind == "and" else OrOp(out, nxt)
        return out
    if kind == "not":
        return NotOp(op_from_json(field("arg"), pos + ("arg",)))
    raise ParseError(f"unknown temporal operator {obj['op']!r}", pos + ("op",))


def op_to_json(op: TemporalOp) -> Dict[str, Any]:
    if isinstance(op, Globally):
        return {"op": "globally", "pred": expr_to_json(op.pred)}
    if isinstance(op, Until):
        return {"op": "until", "pred": expr_to_json(op.pred), "tau": op.tau, "then": op_to_json(op.then)}
    if isinstance(op, Finally):
        return {"op": "finally", "tau": op.tau, "then": op_to_json(op.then)}
    if isinstance(op, (AndOp, OrOp)):
        kind = "and" if isinstance(op, AndOp) else "or"
        return {"op": kind, "args": [op_to_json(op.left), op_to_json(op.right)]}
    return {"op": "not", "arg": op_to_json(op.arg)}


def annotation_from_json(obj: Any) -> Annotation:
    if not isinstance(obj, dict):
        raise ParseError("annotation must be an object mapping nodes to operators")
    return Annotation({node: op_from_json(op, (node,)) for node, op in obj.items()})


def annotation_to_json(annotation: Annotation) -> Dict[str, Any]:
    return {node: op_to_json(op) for node, op in annotation.by_node.items()}


def load_annotation(path: Union[str, Path]) -> Annotation:
    return annotation_from_json(load_json(path))
