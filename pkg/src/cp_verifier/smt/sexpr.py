"""Minimal SMT-LIB s-expression reader and printer."""

import re
from dataclasses import dataclass
from typing import Iterator, List, Union

from cp_verifier.model.errors import MalformedModel

_SIMPLE_SYMBOL = re.compile(r"^[A-Za-z~!@$%^&*_\-+=<>.?/][0-9A-Za-z~!@$%^&*_\-+=<>.?/]*$")


@dataclass(frozen=True)
class StringAtom:
    """A string literal, e.g. the argument of ``:reason-unknown``."""

    text: str


SExpr = Union[str, StringAtom, List["SExpr"]]


def smt_symbol(name: str) -> str:
    """Return ``name`` as an SMT-LIB symbol, quoting it with bars if needed."""
    if _SIMPLE_SYMBOL.match(name):
        return name
    if "|" in name or "\\" in name:
        raise ValueError(f"name {name!r} cannot be written as an SMT-LIB symbol")
    return f"|{name}|"


def _tokens(text: str) -> Iterator[str]:
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c
            i += 1
        elif c == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise MalformedModel("unterminated quoted symbol", text[i:i + 40])
            yield text[i:j + 1]
            i = j + 1
        elif c == '"':
            j = i + 1
            while True:
                j = text.find('"', j)
                if j < 0:
                    raise MalformedModel("unterminated string literal", text[i:i + 40])
                if j + 1 < n and text[j + 1] == '"':
                    j += 2
                    continue
                break
            yield text[i:j + 1]
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();|"':
                j += 1
            yield text[i:j]
            i = j


def parse_all(text: str) -> List[SExpr]:
    """Parse every top-level s-expression in ``text``.

    Quoted symbols are returned without their bars and string literals as
    :class:`StringAtom`.

    Raises:
        MalformedModel: On unbalanced parentheses or unterminated atoms.
    """
    stack: List[List[SExpr]] = [[]]
    for tok in _tokens(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise MalformedModel("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        elif tok.startswith("|"):
            stack[-1].append(tok[1:-1])
        elif tok.startswith('"'):
            stack[-1].append(StringAtom(tok[1:-1].replace('""', '"')))
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise MalformedModel("unbalanced '('")
    return stack[0]


def render(sx: SExpr) -> str:
    if isinstance(sx, StringAtom):
        return '"' + sx.text.replace('"', '""') + '"'
    if isinstance(sx, str):
        return sx
    return "(" + " ".join(render(x) for x in sx) + ")"
