"""Value sorts: the type universe routes and policy expressions live in."""

import re
from dataclasses import dataclass
from typing import Tuple, Union

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class BoolSort:
    """Booleans."""

    def __str__(self) -> str:
        return "Bool"


@dataclass(frozen=True)
class IntSort:
    """Unbounded nonnegative integers."""

    def __str__(self) -> str:
        return "Int"


@dataclass(frozen=True)
class BitVecSort:
    """Fixed-width unsigned bit-vectors."""

    width: int

    def __post_init__(self) -> None:
        if not isinstance(self.width, int) or isinstance(self.width, bool) or self.width <= 0:
            raise ValueError(f"bit-vector width must be a positive int, got {self.width!r}")

    @property
    def modulus(self) -> int:
        return 1 << self.width

    def __str__(self) -> str:
        return f"BitVec({self.width})"


@dataclass(frozen=True)
class EnumSort:
    """A finite set of labels, ordered as declared."""

    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("enum sort needs at least one label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate enum labels in {self.labels}")
        for label in self.labels:
            if not _IDENTIFIER.match(label):
                raise ValueError(f"enum label {label!r} is not an identifier")

    def __str__(self) -> str:
        return "Enum(" + ",".join(self.labels) + ")"


@dataclass(frozen=True)
class StringSetSort:
    """Finite sets of literal strings."""

    def __str__(self) -> str:
        return "StringSet"


@dataclass(frozen=True)
class OptionSort:
    """Either nothing (the null route) or a value of the inner sort."""

    inner: "ValueSort"

    def __str__(self) -> str:
        return f"Option({self.inner})"


@dataclass(frozen=True)
class RecordSort:
    """Named fields in declaration order."""

    fields: Tuple[Tuple[str, "ValueSort"], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.fields]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate record fields in {names}")
        for name in names:
            if not _IDENTIFIER.match(name):
                raise ValueError(f"record field {name!r} is not an identifier")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.fields)

    def has(self, name: str) -> bool:
        return name in self.names

    def field(self, name: str) -> "ValueSort":
        for field_name, sort in self.fields:
            if field_name == name:
                return sort
        raise KeyError(name)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __str__(self) -> str:
        return "Record{" + ",".join(f"{n}:{s}" for n, s in self.fields) + "}"


ValueSort = Union[BoolSort, IntSort, BitVecSort, EnumSort, StringSetSort, OptionSort, RecordSort]

BOOL = BoolSort()
INT = IntSort()
STRING_SET = StringSetSort()


def record_sort(**fields: ValueSort) -> RecordSort:
    """Build a record sort from keyword arguments, keeping their order."""
    return RecordSort(tuple(fields.items()))


def is_numeric(sort: ValueSort) -> bool:
    """Return whether the sort supports ordering and arithmetic."""
    return isinstance(sort, (IntSort, BitVecSort))


def mentions_string_set(sort: ValueSort) -> bool:
    """Return whether a string set occurs anywhere inside the sort."""
    if isinstance(sort, StringSetSort):
        return True
    if isinstance(sort, OptionSort):
        return mentions_string_set(sort.inner)
    if isinstance(sort, RecordSort):
        return any(mentions_string_set(s) for _, s in sort.fields)
    return False
