"""The time-free modular check.

It accepts circular interfaces that exclude every real execution, so its
verdicts are unsound; reports from it are always labelled as such.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor

from cp_verifier.checker.modular import run_conditions
from cp_verifier.checker.schemas import CheckReport, ConditionKind
from cp_verifier.checker.vcs import network_alphabet, vc_strawperson
from cp_verifier.model.errors import NonGloballyInterface
from cp_verifier.model.network import NetworkInstance
from cp_verifier.smt.client import SolverClient
from cp_verifier.temporal.ops import Annotation, is_time_free

logger = logging.getLogger(__name__)


def check_strawperson(n: NetworkInstance, A: Annotation, client: SolverClient, jobs: int = 1) -> CheckReport:
    """Check each node's time-free condition.

    Raises:
        NonGloballyInterface: If some interface uses witness times.
    """
    for v in n.nodes:
        if not is_time_free(A[v]):
            raise NonGloballyInterface(f"interface of {v} has witness times; the time-free check needs Globally only")
    alphabet = network_alphabet(n, A)
    logger.warning("⚠️  time-free check on %s: a pass does not imply the interfaces hold", n.name)
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = [
            pool.submit(
                run_conditions, v,
                [lambda v=v: vc_strawperson(n, A, v, alphabet)],
                [ConditionKind.STRAWPERSON],
                client,
            )
            for v in n.nodes
        ]
        verdicts = [f.result() for f in futures]
    return CheckReport.from_verdicts(
        "strawperson", verdicts, time.perf_counter() - start, network=n.name, unsound=True
    )
