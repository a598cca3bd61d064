"""Per-node modular checking and report assembly."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

from cp_verifier.checker.replay import replay_counterexample
from cp_verifier.checker.schemas import (
    CheckReport,
    ConditionKind,
    ConditionResult,
    ConditionStatus,
    Counterexample,
    NodeVerdict,
)
from cp_verifier.checker.vcs import (
    TIME,
    VerificationCondition,
    encode_condition,
    network_alphabet,
    vc_inductive,
    vc_initial,
    vc_safety,
)
from cp_verifier.model.expr import Lt, Var, nat
from cp_verifier.model.network import NetworkInstance
from cp_verifier.model.values import render_value
from cp_verifier.smt.client import SolverClient
from cp_verifier.smt.encoder import Alphabet
from cp_verifier.smt.schemas import SolverVerdict, VerdictKind
from cp_verifier.temporal.ops import Annotation

logger = logging.getLogger(__name__)

_STATUS = {
    VerdictKind.VALID: ConditionStatus.VALID,
    VerdictKind.COUNTEREXAMPLE: ConditionStatus.COUNTEREXAMPLE,
    VerdictKind.UNKNOWN: ConditionStatus.UNKNOWN,
    VerdictKind.FAILURE: ConditionStatus.FAILURE,
}


def solve(vc: VerificationCondition, client: SolverClient, label: Optional[str] = None) -> SolverVerdict:
    enc, goal = encode_condition(vc)
    return client.check_validity(enc, goal, label or vc.label)


def minimize_time(vc: VerificationCondition, verdict: SolverVerdict, client: SolverClient) -> SolverVerdict:
    """Re-query with ``t < t*`` until no earlier counterexample exists."""
    step = 0
    while verdict.is_counterexample:
        found = verdict.assignment[TIME].data
        if found == 0:
            break
        earlier = solve(vc.with_hypothesis(Lt(Var(TIME), nat(found))), client, f"{vc.label}.min{step}")
        step += 1
        if not earlier.is_counterexample:
            break
        earlier.elapsed += verdict.elapsed
        verdict = earlier
    return verdict


def to_counterexample(vc: VerificationCondition, verdict: SolverVerdict) -> Counterexample:
    """Render a model as node, time, neighbor routes, symbolics and merged route."""
    replay = replay_counterexample(vc, verdict.assignment)
    env = replay.env
    when: Optional[int] = None
    if vc.timed:
        when = env[TIME].data + vc.time_offset
    elif vc.kind == ConditionKind.INITIAL:
        when = 0
    return Counterexample(
        kind=vc.kind,
        time=when,
        routes={label: render_value(env[name]) for label, name in vc.routes},
        symbolics={sym.name: render_value(env[sym.name]) for sym in vc.symbolics},
        result=render_value(env[vc.result]) if vc.result else None,
    )


def check_condition(vc: VerificationCondition, client: SolverClient, minimize: bool = True) -> ConditionResult:
    start = time.perf_counter()
    verdict = solve(vc, client)
    if minimize and vc.timed:
        verdict = minimize_time(vc, verdict, client)
    result = ConditionResult(kind=vc.kind, status=_STATUS[verdict.kind])
    if verdict.is_counterexample:
        result.counterexample = to_counterexample(vc, verdict)
    elif verdict.kind == VerdictKind.UNKNOWN:
        result.reason = verdict.reason
    elif verdict.kind == VerdictKind.FAILURE:
        result.reason = verdict.detail
    result.wall_seconds = time.perf_counter() - start
    return result


def run_conditions(node: str, builders: List[Callable[[], VerificationCondition]], kinds: List[ConditionKind], client: SolverClient) -> NodeVerdict:
    """Check conditions in order, skipping the rest after the first non-valid one."""
    verdict = NodeVerdict(node=node)
    failed = False
    for kind, build in zip(kinds, builders):
        if failed:
            verdict.conditions.append(ConditionResult(kind=kind, status=ConditionStatus.SKIPPED))
            continue
        result = check_condition(build(), client)
        verdict.conditions.append(result)
        failed = result.status != ConditionStatus.VALID
    mark = "✅" if verdict.passed else "❌"
    logger.info("%s %s checked in %.3fs", mark, node, verdict.total_seconds)
    return verdict


def check_node(
    n: NetworkInstance,
    A: Annotation,
    P: Annotation,
    v: str,
    client: SolverClient,
    delay: int = 0,
    alphabet: Optional[Alphabet] = None,
) -> NodeVerdict:
    """Run the initial, inductive and safety conditions of ``v`` in order."""
    alphabet = alphabet or network_alphabet(n, A, P)
    builders: List[Callable[[], VerificationCondition]] = [
        lambda: vc_initial(n, A, v, alphabet),
        lambda: vc_inductive(n, A, v, delay, alphabet),
        lambda: vc_safety(n, A, P, v, alphabet),
    ]
    kinds = [ConditionKind.INITIAL, ConditionKind.INDUCTIVE, ConditionKind.SAFETY]
    return run_conditions(v, builders, kinds, client)


def check_modular(
    n: NetworkInstance,
    A: Annotation,
    P: Annotation,
    client: SolverClient,
    delay: int = 0,
    jobs: int = 1,
) -> CheckReport:
    """Check every node independently on a pool of ``jobs`` workers.

    No node's failure stops the others; the report lists every node in
    declaration order.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    alphabet = network_alphabet(n, A, P)
    logger.info("🔍 Checking %d nodes of %s (delay=%d, jobs=%d)", len(n.nodes), n.name, delay, jobs)
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(check_node, n, A, P, v, client, delay, alphabet) for v in n.nodes]
        verdicts = [f.result() for f in futures]
    total = time.perf_counter() - start
    report = CheckReport.from_verdicts("modular", verdicts, total, network=n.name, delay=delay)
    logger.info("%s %s: %s in %.2fs", "✅" if report.passed else "❌", n.name, report.overall.value, total)
    return report
