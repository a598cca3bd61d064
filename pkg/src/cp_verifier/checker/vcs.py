"""Verification conditions for the modular check.

Each condition is kept at the expression level: declared variables,
named intermediate routes, hypotheses and a conclusion. The same object
is encoded for the solver (:func:`encode_condition`) and replayed
concretely against a model (``checker.replay``).
"""

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from cp_verifier.checker.schemas import ConditionKind
from cp_verifier.model.expr import Add, Expr, Sub, Var, disj, free_vars, nat, substitute
from cp_verifier.model.network import MERGE_LEFT, MERGE_RIGHT, ROUTE_VAR, NetworkInstance, SymbolicVar
from cp_verifier.model.sorts import INT, ValueSort
from cp_verifier.smt.encoder import Alphabet, SmtEncoder, SolverTerm
from cp_verifier.temporal.lowering import apply_at, lower_at
from cp_verifier.temporal.ops import Annotation

TIME = "cpv.t"
Definition = Tuple[str, Expr]


def in_var(u: str) -> str:
    return f"cpv.in.{u}"


def symbol_name(symbolic: str) -> str:
    return f"sym.{symbolic}"


@dataclass(frozen=True)
class VerificationCondition:
    """``hypotheses ⇒ conclusion`` over declared variables and symbolics."""

    node: str
    kind: ConditionKind
    variables: Tuple[Tuple[str, ValueSort], ...]
    definitions: Tuple[Definition, ...]
    hypotheses: Tuple[Expr, ...]
    conclusion: Expr
    symbolics: Tuple[SymbolicVar, ...]
    alphabet: Alphabet
    # Displayed counterexample routes: label -> variable or definition name.
    routes: Tuple[Tuple[str, str], ...] = ()
    result: Optional[str] = None
    time_offset: int = 0

    @property
    def label(self) -> str:
        if self.kind == ConditionKind.STABLE:
            return "monolithic"
        if self.kind == ConditionKind.STRAWPERSON:
            return f"strawperson.{self.node}"
        return f"{self.node}.{self.kind.value}"

    @property
    def timed(self) -> bool:
        return any(name == TIME for name, _ in self.variables)

    def with_hypothesis(self, extra: Expr) -> "VerificationCondition":
        return replace(self, hypotheses=self.hypotheses + (extra,))


def network_alphabet(n: NetworkInstance, *annotations: Annotation) -> Alphabet:
    strings = set(n.strings())
    for annotation in annotations:
        strings |= annotation.strings()
    return Alphabet.of(strings)


def fold_definitions(n: NetworkInstance, v: str, incoming: Mapping[str, Expr]) -> Tuple[List[Definition], str]:
    """Name ``init_v`` and every transfer and merge step of ``v``'s update.

    Returns the definitions in dependency order and the name holding the
    merged route. Predecessors are folded in sorted order, starting from
    ``init_v``, exactly as the simulator does.
    """
    acc = f"cpv.init.{v}"
    defs: List[Definition] = [(acc, n.init[v])]
    for i, u in enumerate(n.preds(v)):
        transferred = f"cpv.tr.{u}.{v}"
        defs.append((transferred, substitute(n.transfer[(u, v)], {ROUTE_VAR: incoming[u]})))
        merged = f"cpv.merge.{v}.{i}"
        defs.append((merged, substitute(n.merge, {MERGE_LEFT: Var(acc), MERGE_RIGHT: Var(transferred)})))
        acc = merged
    return defs, acc


def referenced_symbolics(n: NetworkInstance, exprs: Sequence[Expr]) -> Tuple[SymbolicVar, ...]:
    names: FrozenSet[str] = frozenset()
    for e in exprs:
        names |= free_vars(e)
    return tuple(sym for sym in n.symbolics if sym.name in names)


def _at_route(pred: Expr, route: str) -> Expr:
    return substitute(pred, {ROUTE_VAR: Var(route)})


def _build(
    n: NetworkInstance,
    v: str,
    kind: ConditionKind,
    variables: List[Tuple[str, ValueSort]],
    definitions: List[Definition],
    hypotheses: List[Expr],
    conclusion: Expr,
    alphabet: Alphabet,
    **extra: object,
) -> VerificationCondition:
    exprs = [e for _, e in definitions] + hypotheses + [conclusion]
    return VerificationCondition(
        node=v,
        kind=kind,
        variables=tuple(variables),
        definitions=tuple(definitions),
        hypotheses=tuple(hypotheses),
        conclusion=conclusion,
        symbolics=referenced_symbolics(n, exprs),
        alphabet=alphabet,
        **extra,  # type: ignore[arg-type]
    )


def vc_initial(n: NetworkInstance, A: Annotation, v: str, alphabet: Optional[Alphabet] = None) -> VerificationCondition:
    """``init_v ∈ A(v)(0)``, with time fixed at 0."""
    alphabet = alphabet or network_alphabet(n, A)
    init = f"cpv.init.{v}"
    return _build(
        n, v, ConditionKind.INITIAL,
        variables=[],
        definitions=[(init, n.init[v])],
        hypotheses=[],
        conclusion=_at_route(apply_at(A[v], 0), init),
        alphabet=alphabet,
        routes=((v, init),),
        result=init,
    )


def vc_inductive(
    n: NetworkInstance,
    A: Annotation,
    v: str,
    delay: int = 0,
    alphabet: Optional[Alphabet] = None,
) -> VerificationCondition:
    """If every in-neighbor's route fits its interface at some time in the
    window ``[t - delay, t]``, the merged route fits ``A(v)(t + 1)``.

    The window looks back from ``t`` rather than forward from the
    conclusion; shifting ``t`` by ``delay`` turns one into the other.
    Offsets saturate at 0, so for conclusion times ``1..delay`` the window
    is ``[0, t]`` and those early steps are checked as well. With
    ``delay == 0`` the hypothesis is just ``A(u)(t)``.
    """
    if delay < 0:
        raise ValueError("delay must be nonnegative")
    alphabet = alphabet or network_alphabet(n, A)
    t = Var(TIME)
    variables: List[Tuple[str, ValueSort]] = [(TIME, INT)]
    hypotheses: List[Expr] = []
    incoming: Dict[str, Expr] = {}
    for u in n.preds(v):
        name = in_var(u)
        variables.append((name, n.route_sort))
        incoming[u] = Var(name)
        window = [lower_at(A[u], t if k == 0 else Sub(t, nat(k))) for k in range(delay + 1)]
        hypotheses.append(_at_route(disj(*window), name))
    definitions, merged = fold_definitions(n, v, incoming)
    return _build(
        n, v, ConditionKind.INDUCTIVE,
        variables=variables,
        definitions=definitions,
        hypotheses=hypotheses,
        conclusion=_at_route(lower_at(A[v], Add(t, nat(1))), merged),
        alphabet=alphabet,
        routes=tuple((u, in_var(u)) for u in n.preds(v)),
        result=merged,
        time_offset=1,
    )


def vc_safety(
    n: NetworkInstance,
    A: Annotation,
    P: Annotation,
    v: str,
    alphabet: Optional[Alphabet] = None,
) -> VerificationCondition:
    """``A(v)(t) ⊆ P(v)(t)`` for every time ``t``."""
    alphabet = alphabet or network_alphabet(n, A, P)
    t = Var(TIME)
    route = f"cpv.route.{v}"
    return _build(
        n, v, ConditionKind.SAFETY,
        variables=[(TIME, INT), (route, n.route_sort)],
        definitions=[],
        hypotheses=[_at_route(lower_at(A[v], t), route)],
        conclusion=_at_route(lower_at(P[v], t), route),
        alphabet=alphabet,
        routes=((v, route),),
    )


def vc_strawperson(n: NetworkInstance, A: Annotation, v: str, alphabet: Optional[Alphabet] = None) -> VerificationCondition:
    """Time-free check: neighbors in their interfaces imply the merged route is in ``A(v)``."""
    alphabet = alphabet or network_alphabet(n, A)
    variables: List[Tuple[str, ValueSort]] = []
    hypotheses: List[Expr] = []
    incoming: Dict[str, Expr] = {}
    for u in n.preds(v):
        name = in_var(u)
        variables.append((name, n.route_sort))
        incoming[u] = Var(name)
        hypotheses.append(_at_route(apply_at(A[u], 0), name))
    definitions, merged = fold_definitions(n, v, incoming)
    return _build(
        n, v, ConditionKind.STRAWPERSON,
        variables=variables,
        definitions=definitions,
        hypotheses=hypotheses,
        conclusion=_at_route(apply_at(A[v], 0), merged),
        alphabet=alphabet,
        routes=tuple((u, in_var(u)) for u in n.preds(v)),
        result=merged,
    )


def encode_condition(vc: VerificationCondition) -> Tuple[SmtEncoder, SolverTerm]:
    """Declare, define and assume everything ``vc`` needs; return the goal term."""
    enc = SmtEncoder(vc.alphabet)
    env: Dict[str, SolverTerm] = {}
    for name, sort in vc.variables:
        env[name] = enc.declare(name, sort)
    for sym in vc.symbolics:
        env[sym.name] = enc.declare(symbol_name(sym.name), sym.sort)
    for sym in vc.symbolics:
        if sym.assumption is not None:
            enc.assume(enc.encode_expr(sym.assumption, {sym.name: env[sym.name]}))
    for name, expr in vc.definitions:
        env[name] = enc.define(name, enc.encode_expr(expr, env))
    for hypothesis in vc.hypotheses:
        enc.assume(enc.encode_expr(hypothesis, env))
    return enc, enc.encode_expr(vc.conclusion, env)
