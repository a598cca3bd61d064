"""SMT-LIB encoding and the external solver driver."""

from cp_verifier.smt.client import SolverClient
from cp_verifier.smt.encoder import Alphabet, SmtEncoder, SolverTerm
from cp_verifier.smt.factory import create_solver_client
from cp_verifier.smt.model import decode_value, parse_model, parse_response
from cp_verifier.smt.schemas import SolverVerdict, VerdictKind

__all__ = [
    "Alphabet",
    "SmtEncoder",
    "SolverClient",
    "SolverTerm",
    "SolverVerdict",
    "VerdictKind",
    "create_solver_client",
    "decode_value",
    "parse_model",
    "parse_response",
]
