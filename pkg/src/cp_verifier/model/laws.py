"""Randomized, advisory checks of the merge function's algebraic laws."""

import logging
import random
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from cp_verifier.model.network import NetworkInstance, merge_values
from cp_verifier.model.sampling import sample_value
from cp_verifier.model.values import Value, render_value

logger = logging.getLogger(__name__)


class LawViolation(BaseModel):
    """A sampled witness against commutativity or associativity."""

    law: str = Field(..., description="'commutativity' or 'associativity'")
    routes: List[str] = Field(..., description="Rendered s1, s2 (and s3)")
    left: str = Field(..., description="Rendered left-hand side")
    right: str = Field(..., description="Rendered right-hand side")


class MergeLawReport(BaseModel):
    """Outcome of sampling the merge function."""

    samples: int
    seed: int
    commutativity: Optional[LawViolation] = None
    associativity: Optional[LawViolation] = None

    @property
    def ok(self) -> bool:
        return self.commutativity is None and self.associativity is None


def check_merge_laws(n: NetworkInstance, samples: int = 1000, seed: int = 0) -> MergeLawReport:
    """Sample route triples and test ``⊕`` for commutativity and associativity.

    Symbolic variables the merge mentions are resampled per triple. The
    first violation of each law is reported.
    """
    rng = random.Random(seed)
    alphabet = sorted(n.strings())
    report = MergeLawReport(samples=samples, seed=seed)
    for _ in range(samples):
        env: Dict[str, Value] = {
            sym.name: sample_value(sym.sort, rng, alphabet) for sym in n.symbolics
        }
        s1, s2, s3 = (sample_value(n.route_sort, rng, alphabet) for _ in range(3))
        if report.commutativity is None:
            ab, ba = merge_values(n, s1, s2, env), merge_values(n, s2, s1, env)
            if ab != ba:
                report.commutativity = _violation("commutativity", [s1, s2], ab, ba)
        if report.associativity is None:
            left = merge_values(n, merge_values(n, s1, s2, env), s3, env)
            right = merge_values(n, s1, merge_values(n, s2, s3, env), env)
            if left != right:
                report.associativity = _violation("associativity", [s1, s2, s3], left, right)
        if report.commutativity and report.associativity:
            break
    if not report.ok:
        logger.warning("⚠️  merge of %s violates its laws: %s", n.name, report.model_dump(exclude_none=True))
    return report


def _violation(law: str, routes: List[Value], left: Value, right: Value) -> LawViolation:
    return LawViolation(
        law=law,
        routes=[render_value(r) for r in routes],
        left=render_value(left),
        right=render_value(right),
    )
