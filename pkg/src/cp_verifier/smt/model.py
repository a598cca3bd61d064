"""Reading solver responses: verdict, model values and reasons."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from cp_verifier.model.errors import MalformedModel, SolverFailure
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
from cp_verifier.model.values import Value, set_value
from cp_verifier.smt.encoder import SmtEncoder
from cp_verifier.smt.sexpr import SExpr, StringAtom, parse_all, render

VERDICTS = ("sat", "unsat", "unknown", "timeout")


@dataclass
class SolverResponse:
    verdict: str
    values: Dict[str, SExpr] = field(default_factory=dict)
    reason: Optional[str] = None


def parse_response(text: str) -> SolverResponse:
    """Split raw solver output into verdict, ``get-value`` pairs and reason.

    Errors printed before the verdict mean the script itself was rejected;
    errors after it (e.g. ``get-value`` following ``unsat``) are expected.

    Raises:
        SolverFailure: If no verdict is found or the script was rejected.
    """
    try:
        items = parse_all(text)
    except MalformedModel as e:
        raise SolverFailure(f"unreadable solver output: {e}") from e
    response: Optional[SolverResponse] = None
    for item in items:
        if response is None:
            if isinstance(item, str) and item in VERDICTS:
                response = SolverResponse(verdict=item)
            elif isinstance(item, list) and item and item[0] == "error":
                raise SolverFailure(f"solver rejected the script: {_message(item)}")
            continue
        if not isinstance(item, list) or not item:
            continue
        if item[0] == ":reason-unknown" and len(item) == 2:
            reason = item[1]
            response.reason = reason.text if isinstance(reason, StringAtom) else render(reason)
        elif all(isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], str) for pair in item):
            for name, value in item:
                response.values[name] = value
    if response is None:
        raise SolverFailure(f"no verdict in solver output: {text.strip()[:200]!r}")
    return response


def _message(item: List[SExpr]) -> str:
    return " ".join(x.text if isinstance(x, StringAtom) else render(x) for x in item[1:])


def parse_model(output: str, encoder: SmtEncoder) -> Dict[str, Value]:
    """Decode the ``get-value`` answer for every symbol the encoder declared.

    Raises:
        MalformedModel: If a symbol is missing or a value does not fit its sort.
    """
    values = parse_response(output).values
    return decode_assignment(values, encoder)


def decode_assignment(values: Dict[str, SExpr], encoder: SmtEncoder) -> Dict[str, Value]:
    out: Dict[str, Value] = {}
    for name, sort in encoder.declarations:
        if name not in values:
            raise MalformedModel(f"model has no value for {name!r}")
        out[name] = decode_value(values[name], sort, encoder)
    return out


def decode_value(sx: SExpr, sort: ValueSort, encoder: SmtEncoder) -> Value:
    """Decode one model term back into a value of ``sort``."""
    if isinstance(sx, list) and len(sx) == 3 and sx[0] == "as":
        sx = sx[1]
    if isinstance(sort, BoolSort):
        if sx in ("true", "false"):
            return Value(sort, sx == "true")
    elif isinstance(sort, IntSort):
        if isinstance(sx, str) and sx.isdigit():
            return Value(sort, int(sx))
        if isinstance(sx, list) and sx[:1] == ["-"]:
            raise MalformedModel("negative Int in model", render(sx))
    elif isinstance(sort, BitVecSort):
        return Value(sort, int(_bits(sx, sort.width), 2))
    elif isinstance(sort, StringSetSort):
        return set_value(encoder.alphabet.decode(_bits(sx, encoder.alphabet.width)))
    elif isinstance(sort, EnumSort):
        prefix = encoder.sort_name(sort) + "_"
        if isinstance(sx, str) and sx.startswith(prefix) and sx[len(prefix):] in sort.labels:
            return Value(sort, sx[len(prefix):])
    elif isinstance(sort, OptionSort):
        if sx == encoder.constructor(sort, "none"):
            return Value(sort, None)
        if isinstance(sx, list) and len(sx) == 2 and sx[0] == encoder.constructor(sort, "some"):
            return Value(sort, decode_value(sx[1], sort.inner, encoder))
    elif isinstance(sort, RecordSort):
        ctor = encoder.constructor(sort, "mk")
        args: Optional[List[SExpr]] = None
        if sx == ctor and not sort.fields:
            args = []
        elif isinstance(sx, list) and sx[:1] == [ctor] and len(sx) == len(sort.fields) + 1:
            args = sx[1:]
        if args is not None:
            return Value(sort, tuple(decode_value(a, s, encoder) for a, (_, s) in zip(args, sort.fields)))
    raise MalformedModel(f"cannot read a {sort} value", render(sx))


def _bits(sx: SExpr, width: int) -> str:
    """Return a bit-vector literal as ``width`` binary digits, MSB first."""
    if isinstance(sx, str) and sx.startswith("#b"):
        bits = sx[2:]
    elif isinstance(sx, str) and sx.startswith("#x"):
        try:
            bits = "".join(f"{int(c, 16):04b}" for c in sx[2:])
        except ValueError:
            raise MalformedModel("bad hexadecimal literal", sx) from None
    elif isinstance(sx, list) and len(sx) == 3 and sx[0] == "_" and isinstance(sx[1], str) and sx[1].startswith("bv"):
        try:
            bits = format(int(sx[1][2:]), f"0{width}b")
        except ValueError:
            raise MalformedModel("bad bit-vector literal", render(sx)) from None
    else:
        raise MalformedModel("expected a bit-vector literal", render(sx))
    if len(bits) != width or set(bits) - {"0", "1"}:
        raise MalformedModel(f"expected {width} bits", render(sx))
    return bits
