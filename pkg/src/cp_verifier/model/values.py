"""Concrete values and their rendering."""

from dataclasses import dataclass
from typing import Any, FrozenSet, Iterable, Mapping, Optional

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


@dataclass(frozen=True)
class Value:
    """A concrete inhabitant of a sort.

    ``data`` holds a ``bool`` for Bool, a nonnegative ``int`` for Int and
    BitVec, the label for Enum, a ``frozenset`` of strings for StringSet,
    ``None`` or the inner ``Value`` for Option, and a tuple of field values
    in declaration order for Record.
    """

    sort: ValueSort
    data: Any

    @property
    def is_none(self) -> bool:
        return isinstance(self.sort, OptionSort) and self.data is None

    def unwrap(self) -> "Value":
        if not isinstance(self.sort, OptionSort) or self.data is None:
            raise ValueError(f"cannot unwrap {render_value(self)}")
        return self.data

    def field(self, name: str) -> "Value":
        if not isinstance(self.sort, RecordSort):
            raise ValueError(f"{render_value(self)} is not a record")
        return self.data[self.sort.index(name)]

    def __str__(self) -> str:
        return render_value(self)


TRUE = Value(BOOL, True)
FALSE = Value(BOOL, False)


def bool_value(flag: bool) -> Value:
    return TRUE if flag else FALSE


def int_value(n: int) -> Value:
    if n < 0:
        raise ValueError(f"Int values are nonnegative, got {n}")
    return Value(INT, n)


def bv_value(n: int, width: int) -> Value:
    sort = BitVecSort(width)
    return Value(sort, n % sort.modulus)


def enum_value(sort: EnumSort, label: str) -> Value:
    if label not in sort.labels:
        raise ValueError(f"{label!r} is not a label of {sort}")
    return Value(sort, label)


def set_value(items: Iterable[str]) -> Value:
    return Value(STRING_SET, frozenset(items))


def none_value(inner: ValueSort) -> Value:
    return Value(OptionSort(inner), None)


def some_value(inner: Value) -> Value:
    return Value(OptionSort(inner.sort), inner)


def record_value(sort: RecordSort, fields: Mapping[str, Value]) -> Value:
    missing = set(sort.names) - set(fields)
    extra = set(fields) - set(sort.names)
    if missing or extra:
        raise ValueError(f"record fields mismatch: missing {sorted(missing)}, extra {sorted(extra)}")
    return Value(sort, tuple(fields[name] for name in sort.names))


def with_field(value: Value, name: str, new: Value) -> Value:
    """Return a copy of a record value with one field replaced."""
    sort = value.sort
    assert isinstance(sort, RecordSort)
    data = list(value.data)
    data[sort.index(name)] = new
    return Value(sort, tuple(data))


def conforms(value: Value, sort: Optional[ValueSort] = None) -> bool:
    """Return whether ``value`` is a well-formed inhabitant of ``sort``."""
    sort = value.sort if sort is None else sort
    if value.sort != sort:
        return False
    data = value.data
    if isinstance(sort, BoolSort):
        return isinstance(data, bool)
    if isinstance(sort, IntSort):
        return isinstance(data, int) and not isinstance(data, bool) and data >= 0
    if isinstance(sort, BitVecSort):
        return isinstance(data, int) and not isinstance(data, bool) and 0 <= data < sort.modulus
    if isinstance(sort, EnumSort):
        return data in sort.labels
    if isinstance(sort, StringSetSort):
        return isinstance(data, frozenset) and all(isinstance(x, str) for x in data)
    if isinstance(sort, OptionSort):
        return data is None or (isinstance(data, Value) and conforms(data, sort.inner))
    if isinstance(sort, RecordSort):
        return (
            isinstance(data, tuple)
            and len(data) == len(sort.fields)
            and all(conforms(v, s) for v, (_, s) in zip(data, sort.fields))
        )
    return False


def strings_in(value: Value) -> FrozenSet[str]:
    """Collect every string occurring in a value's string sets."""
    sort, data = value.sort, value.data
    if isinstance(sort, StringSetSort):
        return data
    if isinstance(sort, OptionSort):
        return frozenset() if data is None else strings_in(data)
    if isinstance(sort, RecordSort):
        out: FrozenSet[str] = frozenset()
        for item in data:
            out |= strings_in(item)
        return out
    return frozenset()


def render_value(value: Value) -> str:
    """Render a value the way route tables print it, e.g. ``⟨100,3,true⟩``."""
    sort, data = value.sort, value.data
    if isinstance(sort, BoolSort):
        return "true" if data else "false"
    if isinstance(sort, (IntSort, BitVecSort)):
        return str(data)
    if isinstance(sort, EnumSort):
        return data
    if isinstance(sort, StringSetSort):
        return "{" + ",".join(sorted(data)) + "}"
    if isinstance(sort, OptionSort):
        return "∅" if data is None else render_value(data)
    if isinstance(sort, RecordSort):
        return "⟨" + ",".join(render_value(v) for v in data) + "⟩"
    raise TypeError(f"unknown sort {sort!r}")
