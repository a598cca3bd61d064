"""Whole-network stable-state check.

All nodes' fixed-point equations go into one query and the property is
checked with its time erased. This is the baseline the modular check is
compared against.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Tuple

from cp_verifier.checker.modular import run_conditions, solve
from cp_verifier.checker.schemas import CheckReport, ConditionKind
from cp_verifier.checker.vcs import Definition, VerificationCondition, fold_definitions, network_alphabet, referenced_symbolics
from cp_verifier.model.expr import And, Eq, Expr, Var, substitute
from cp_verifier.model.network import ROUTE_VAR, NetworkInstance
from cp_verifier.model.sorts import ValueSort
from cp_verifier.smt.client import SolverClient
from cp_verifier.smt.schemas import SolverVerdict
from cp_verifier.temporal.lowering import erase_temporal
from cp_verifier.temporal.ops import Annotation

logger = logging.getLogger(__name__)

PSEUDO_NODE = "network"


def stable_var(v: str) -> str:
    return f"cpv.stable.{v}"


@dataclass(frozen=True)
class StableStateEncoding:
    """One route variable per node, constrained to a fixed point of the update."""

    variables: Tuple[Tuple[str, ValueSort], ...]
    definitions: Tuple[Definition, ...]
    constraints: Tuple[Expr, ...]


def encode_stable(n: NetworkInstance) -> StableStateEncoding:
    incoming: Dict[str, Expr] = {v: Var(stable_var(v)) for v in n.nodes}
    definitions: List[Definition] = []
    constraints: List[Expr] = []
    for v in n.nodes:
        defs, merged = fold_definitions(n, v, incoming)
        definitions += defs
        constraints.append(Eq(Var(stable_var(v)), Var(merged)))
    return StableStateEncoding(
        variables=tuple((stable_var(v), n.route_sort) for v in n.nodes),
        definitions=tuple(definitions),
        constraints=tuple(constraints),
    )


def stable_condition(n: NetworkInstance, P: Annotation) -> VerificationCondition:
    """Every stable state satisfies the time-erased property at every node.

    Raises:
        UnsupportedShape: If some property cannot be erased.
    """
    encoding = encode_stable(n)
    goal = And(tuple(substitute(erase_temporal(P[v]), {ROUTE_VAR: Var(stable_var(v))}) for v in n.nodes))
    exprs = [e for _, e in encoding.definitions] + list(encoding.constraints) + [goal]
    return VerificationCondition(
        node=PSEUDO_NODE,
        kind=ConditionKind.STABLE,
        variables=encoding.variables,
        definitions=encoding.definitions,
        hypotheses=encoding.constraints,
        conclusion=goal,
        symbolics=referenced_symbolics(n, exprs),
        alphabet=network_alphabet(n, P),
        routes=tuple((v, stable_var(v)) for v in n.nodes),
    )


def check_monolithic(n: NetworkInstance, P: Annotation, client: SolverClient) -> SolverVerdict:
    return solve(stable_condition(n, P), client)


def monolithic_report(n: NetworkInstance, P: Annotation, client: SolverClient) -> CheckReport:
    """Run the stable-state check and report it under the pseudo-node ``network``."""
    logger.info("🔍 Checking stable states of %s in one query", n.name)
    vc = stable_condition(n, P)
    start = time.perf_counter()
    verdict = run_conditions(PSEUDO_NODE, [lambda: vc], [ConditionKind.STABLE], client)
    return CheckReport.from_verdicts("monolithic", [verdict], time.perf_counter() - start, network=n.name)
