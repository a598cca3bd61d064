"""Exception hierarchy shared by the verifier packages."""

from typing import Optional, Sequence


class VerifierError(Exception):
    """Base class for every error raised by cp_verifier."""


class ParseError(VerifierError):
    """A network, interface or property file could not be parsed."""

    def __init__(self, message: str, position: Sequence[object] = ()):
        self.position = tuple(position)
        where = "/".join(str(p) for p in self.position) or "<root>"
        super().__init__(f"{where}: {message}")


class SortError(VerifierError):
    """An expression is ill-sorted."""

    def __init__(self, path: Sequence[str], expected: str, found: str):
        self.path = tuple(path)
        self.expected = expected
        self.found = found
        where = ".".join(self.path) or "<expr>"
        super().__init__(f"{where}: expected {expected}, found {found}")


class UnboundVar(VerifierError):
    """An expression mentions a variable outside its typing environment."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


class NotClosed(VerifierError):
    """Simulation was requested on a network with symbolic inputs."""


class NotConverged(VerifierError):
    """A trace without a convergence index was used where one is required."""


class UnsupportedShape(VerifierError):
    """A temporal operator has no time-erased form."""


class NonGloballyInterface(VerifierError):
    """The time-free check was given an interface with witness times."""


class EmptyAlphabet(VerifierError):
    """A string-set sort was encoded with no string literals in scope."""


class MalformedModel(VerifierError):
    """Solver output could not be decoded into values."""

    def __init__(self, message: str, fragment: Optional[str] = None):
        self.fragment = fragment
        suffix = f" (at {fragment})" if fragment else ""
        super().__init__(message + suffix)


class SolverFailure(VerifierError):
    """The solver process crashed or produced unusable output."""
