"""Translation of sorts, values and policy expressions to SMT-LIB v2 terms.

One :class:`SmtEncoder` is created per query. It names datatypes in the
order they are first needed (``Record0``, ``Option0``, ``Enum0``, ...),
collects declarations, definitions and assumptions, and renders the
final script with :meth:`SmtEncoder.script`.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from cp_verifier.model.errors import EmptyAlphabet, UnboundVar
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
from cp_verifier.model.values import Value
from cp_verifier.smt.sexpr import smt_symbol


@dataclass(frozen=True)
class Alphabet:
    """The string literals a query can mention, one bit each.

    ``strings[i]`` is the i-th character of a ``#b`` literal, i.e. bit
    index ``width - 1 - i``.
    """

    strings: Tuple[str, ...]

    @classmethod
    def of(cls, strings: Iterable[str]) -> "Alphabet":
        return cls(tuple(sorted(set(strings))))

    @property
    def width(self) -> int:
        return len(self.strings)

    def bit(self, item: str) -> int:
        try:
            return self.width - 1 - self.strings.index(item)
        except ValueError:
            raise KeyError(f"string {item!r} is outside the alphabet {list(self.strings)}") from None

    def mask(self, items: Iterable[str]) -> str:
        chosen = set(items)
        unknown = chosen - set(self.strings)
        if unknown:
            raise KeyError(f"strings {sorted(unknown)} are outside the alphabet {list(self.strings)}")
        return "#b" + "".join("1" if s in chosen else "0" for s in self.strings)

    def decode(self, bits: str) -> FrozenSet[str]:
        """Decode a string of ``0``/``1`` characters, MSB first."""
        return frozenset(s for s, b in zip(self.strings, bits) if b == "1")


@dataclass(frozen=True)
class SolverTerm:
    """A rendered SMT-LIB term tagged with its value sort."""

    text: str
    sort: ValueSort


@dataclass(frozen=True)
class Datatype:
    name: str
    sort: ValueSort
    declaration: str


class SmtEncoder:
    """Per-query encoding context."""

    def __init__(self, alphabet: Alphabet = Alphabet(())):
        self.alphabet = alphabet
        self.datatypes: List[Datatype] = []
        self._names: Dict[ValueSort, str] = {}
        self._counts = {"Enum": 0, "Option": 0, "Record": 0}
        self.declarations: List[Tuple[str, ValueSort]] = []
        self.definitions: List[Tuple[str, SolverTerm]] = []
        self.assumptions: List[str] = []
        self._declared: Dict[str, ValueSort] = {}
        self._lets = 0

    # Sorts

    def sort_name(self, sort: ValueSort) -> str:
        """Return the SMT sort for ``sort``, declaring datatypes on first use."""
        if isinstance(sort, BoolSort):
            return "Bool"
        if isinstance(sort, IntSort):
            return "Int"
        if isinstance(sort, BitVecSort):
            return f"(_ BitVec {sort.width})"
        if isinstance(sort, StringSetSort):
            if self.alphabet.width == 0:
                raise EmptyAlphabet("string sets need at least one string literal in scope")
            return f"(_ BitVec {self.alphabet.width})"
        if sort in self._names:
            return self._names[sort]
        if isinstance(sort, EnumSort):
            name = self._fresh_datatype("Enum")
            ctors = " ".join(f"({name}_{label})" for label in sort.labels)
        elif isinstance(sort, OptionSort):
            inner = self.sort_name(sort.inner)
            name = self._fresh_datatype("Option")
            ctors = f"({name}_none) ({name}_some ({name}_value {inner}))"
        elif isinstance(sort, RecordSort):
            if sort.has("mk"):
                raise ValueError("record field 'mk' clashes with the record constructor")
            fields = [(f, self.sort_name(s)) for f, s in sort.fields]
            name = self._fresh_datatype("Record")
            selectors = "".join(f" ({name}_{f} {s})" for f, s in fields)
            ctors = f"({name}_mk{selectors})"
        else:
            raise TypeError(f"unknown sort {sort!r}")
        self._names[sort] = name
        self.datatypes.append(Datatype(name, sort, f"(declare-datatypes (({name} 0)) (({ctors})))"))
        return name

    def _fresh_datatype(self, kind: str) -> str:
        name = f"{kind}{self._counts[kind]}"
        self._counts[kind] += 1
        return name

    def constructor(self, sort: ValueSort, which: str) -> str:
        """Return a constructor or selector name, e.g. ``which='some'``."""
        return f"{self.sort_name(sort)}_{which}"

    # Values

    def encode_value(self, value: Value) -> str:
        sort, data = value.sort, value.data
        if isinstance(sort, BoolSort):
            return "true" if data else "false"
        if isinstance(sort, IntSort):
            return str(data)
        if isinstance(sort, BitVecSort):
            return f"(_ bv{data} {sort.width})"
        if isinstance(sort, StringSetSort):
            self.sort_name(sort)
            return self.alphabet.mask(data)
        if isinstance(sort, EnumSort):
            return self.constructor(sort, data)
        if isinstance(sort, OptionSort):
            if data is None:
                return self.constructor(sort, "none")
            return f"({self.constructor(sort, 'some')} {self.encode_value(data)})"
        if isinstance(sort, RecordSort):
            ctor = self.constructor(sort, "mk")
            if not sort.fields:
                return ctor
            return f"({ctor} " + " ".join(self.encode_value(v) for v in data) + ")"
        raise TypeError(f"unknown sort {sort!r}")

    # Declarations

    def declare(self, name: str, sort: ValueSort) -> SolverTerm:
        """Declare a free constant and attach Int nonnegativity constraints."""
        if name in self._declared:
            if self._declared[name] != sort:
                raise ValueError(f"{name!r} redeclared with a different sort")
            return SolverTerm(smt_symbol(name), sort)
        self.sort_name(sort)
        self._declared[name] = sort
        self.declarations.append((name, sort))
        term = SolverTerm(smt_symbol(name), sort)
        self.assumptions += self._nonnegative(term.text, sort)
        return term

    def define(self, name: str, term: SolverTerm) -> SolverTerm:
        """Bind ``term`` to a named constant so later terms can share it."""
        self.sort_name(term.sort)
        self.definitions.append((name, term))
        return SolverTerm(smt_symbol(name), term.sort)

    def assume(self, term: SolverTerm) -> None:
        self.assumptions.append(term.text)

    def _nonnegative(self, text: str, sort: ValueSort) -> List[str]:
        if isinstance(sort, IntSort):
            return [f"(<= 0 {text})"]
        if isinstance(sort, RecordSort):
            out: List[str] = []
            for f, s in sort.fields:
                out += self._nonnegative(f"({self.constructor(sort, f)} {text})", s)
            return out
        if isinstance(sort, OptionSort):
            inner = self._nonnegative(f"({self.constructor(sort, 'value')} {text})", sort.inner)
            tester = f"((_ is {self.constructor(sort, 'some')}) {text})"
            return [f"(=> {tester} {c})" for c in inner]
        return []

    # Expressions

    def _let(self) -> str:
        self._lets += 1
        return f"cpv.l{self._lets}"

    def encode_expr(self, expr: Expr, env: Mapping[str, SolverTerm]) -> SolverTerm:
        """Translate ``expr`` with its free variables bound by ``env``."""
        enc = self.encode_expr
        if isinstance(expr, Literal):
            return SolverTerm(self.encode_value(expr.value), expr.value.sort)
        if isinstance(expr, Var):
            if expr.name not in env:
                raise UnboundVar(expr.name)
            return env[expr.name]
        if isinstance(expr, FieldGet):
            record = enc(expr.expr, env)
            assert isinstance(record.sort, RecordSort)
            sel = self.constructor(record.sort, expr.name)
            return SolverTerm(f"({sel} {record.text})", record.sort.field(expr.name))
        if isinstance(expr, RecordMake):
            parts = [(name, enc(e, env)) for name, e in expr.fields]
            sort = RecordSort(tuple((name, t.sort) for name, t in parts))
            ctor = self.constructor(sort, "mk")
            if not parts:
                return SolverTerm(ctor, sort)
            return SolverTerm(f"({ctor} " + " ".join(t.text for _, t in parts) + ")", sort)
        if isinstance(expr, RecordWith):
            record = enc(expr.expr, env)
            value = enc(expr.value, env)
            sort = record.sort
            assert isinstance(sort, RecordSort)
            bound = self._let()
            args = [
                value.text if f == expr.name else f"({self.constructor(sort, f)} {bound})"
                for f in sort.names
            ]
            body = f"({self.constructor(sort, 'mk')} " + " ".join(args) + ")"
            return SolverTerm(f"(let (({bound} {record.text})) {body})", sort)
        if isinstance(expr, If):
            cond, then, orelse = enc(expr.cond, env), enc(expr.then, env), enc(expr.orelse, env)
            return SolverTerm(f"(ite {cond.text} {then.text} {orelse.text})", then.sort)
        if isinstance(expr, (And, Or)):
            args = [enc(a, env).text for a in expr.args]
            if not args:
                return SolverTerm("true" if isinstance(expr, And) else "false", BOOL)
            if len(args) == 1:
                return SolverTerm(args[0], BOOL)
            op = "and" if isinstance(expr, And) else "or"
            return SolverTerm(f"({op} " + " ".join(args) + ")", BOOL)
        if isinstance(expr, Not):
            return SolverTerm(f"(not {enc(expr.arg, env).text})", BOOL)
        if isinstance(expr, Eq):
            return SolverTerm(f"(= {enc(expr.left, env).text} {enc(expr.right, env).text})", BOOL)
        if isinstance(expr, Neq):
            return SolverTerm(f"(not (= {enc(expr.left, env).text} {enc(expr.right, env).text}))", BOOL)
        if isinstance(expr, (Lt, Leq, Add, Sub, Min, Max)):
            return self._arith(expr, enc(expr.left, env), enc(expr.right, env))
        if isinstance(expr, SetContains):
            base = enc(expr.expr, env)
            bit = self.alphabet.bit(expr.item)
            return SolverTerm(f"(= ((_ extract {bit} {bit}) {base.text}) #b1)", BOOL)
        if isinstance(expr, SetInsert):
            base = enc(expr.expr, env)
            return SolverTerm(f"(bvor {base.text} {self.alphabet.mask([expr.item])})", base.sort)
        if isinstance(expr, SetRemove):
            base = enc(expr.expr, env)
            keep = self.alphabet.mask(s for s in self.alphabet.strings if s != expr.item)
            return SolverTerm(f"(bvand {base.text} {keep})", base.sort)
        if isinstance(expr, NoneOf):
            sort = OptionSort(expr.inner)
            return SolverTerm(self.constructor(sort, "none"), sort)
        if isinstance(expr, Some):
            inner = enc(expr.expr, env)
            sort = OptionSort(inner.sort)
            return SolverTerm(f"({self.constructor(sort, 'some')} {inner.text})", sort)
        if isinstance(expr, OptionCase):
            option = enc(expr.expr, env)
            sort = option.sort
            assert isinstance(sort, OptionSort)
            bound, payload = self._let(), self._let()
            none = enc(expr.none, env)
            some = enc(expr.some, {**env, expr.var: SolverTerm(payload, sort.inner)})
            tester = f"((_ is {self.constructor(sort, 'none')}) {bound})"
            value = f"({self.constructor(sort, 'value')} {bound})"
            text = (
                f"(let (({bound} {option.text})) "
                f"(ite {tester} {none.text} (let (({payload} {value})) {some.text})))"
            )
            return SolverTerm(text, none.sort)
        raise TypeError(f"not an expression: {expr!r}")

    def _arith(self, expr: Expr, left: SolverTerm, right: SolverTerm) -> SolverTerm:
        bv = isinstance(left.sort, BitVecSort)
        a, b = left.text, right.text
        if isinstance(expr, Lt):
            return SolverTerm(f"({'bvult' if bv else '<'} {a} {b})", BOOL)
        if isinstance(expr, Leq):
            return SolverTerm(f"({'bvule' if bv else '<='} {a} {b})", BOOL)
        if isinstance(expr, Add):
            return SolverTerm(f"({'bvadd' if bv else '+'} {a} {b})", left.sort)
        if isinstance(expr, Sub) and bv:
            return SolverTerm(f"(bvsub {a} {b})", left.sort)
        x, y = self._let(), self._let()
        leq = "bvule" if bv else "<="
        if isinstance(expr, Sub):
            body = f"(ite (<= {y} {x}) (- {x} {y}) 0)"
        elif isinstance(expr, Min):
            body = f"(ite ({leq} {x} {y}) {x} {y})"
        else:
            body = f"(ite ({leq} {y} {x}) {x} {y})"
        return SolverTerm(f"(let (({x} {a}) ({y} {b})) {body})", left.sort)

    # Scripts

    def script(self, goal: SolverTerm, timeout_ms: Optional[int] = None) -> str:
        """Render a script checking the satisfiability of ``¬goal`` under the assumptions."""
        lines = ["(set-option :produce-models true)"]
        if timeout_ms is not None:
            lines.append(f"(set-option :timeout {timeout_ms})")
        lines.append("(set-logic ALL)")
        lines += [d.declaration for d in self.datatypes]
        for name, sort in self.declarations:
            lines.append(f"(declare-fun {smt_symbol(name)} () {self.sort_name(sort)})")
        for name, term in self.definitions:
            symbol = smt_symbol(name)
            lines.append(f"(declare-fun {symbol} () {self.sort_name(term.sort)})")
            lines.append(f"(assert (= {symbol} {term.text}))")
        lines += [f"(assert {a})" for a in self.assumptions]
        lines.append(f"(assert (not {goal.text}))")
        lines.append("(check-sat)")
        if self.declarations:
            names = " ".join(smt_symbol(name) for name, _ in self.declarations)
            lines.append(f"(get-value ({names}))")
        lines.append("(get-info :reason-unknown)")
        lines.append("(exit)")
        return "\n".join(lines) + "\n"
