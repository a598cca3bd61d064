"""Concrete replay of a verification condition under a solver model."""

import logging
from dataclasses import dataclass
from typing import Dict, Mapping

from cp_verifier.checker.vcs import VerificationCondition, symbol_name
from cp_verifier.model.errors import MalformedModel
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.values import Value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Replay:
    env: Dict[str, Value]
    assumptions_hold: bool
    hypotheses_hold: bool
    conclusion_holds: bool

    @property
    def genuine(self) -> bool:
        """Whether the model really falsifies the condition."""
        return self.assumptions_hold and self.hypotheses_hold and not self.conclusion_holds


def replay_counterexample(vc: VerificationCondition, assignment: Mapping[str, Value]) -> Replay:
    """Evaluate ``vc`` with ``eval_expr`` under a model keyed by declared symbol.

    Raises:
        MalformedModel: If the model lacks a declared variable.
    """
    env: Dict[str, Value] = {}
    try:
        for name, _ in vc.variables:
            env[name] = assignment[name]
        for sym in vc.symbolics:
            env[sym.name] = assignment[symbol_name(sym.name)]
    except KeyError as e:
        raise MalformedModel(f"model has no value for {e.args[0]!r}") from None
    assumptions = all(
        eval_expr(sym.assumption, {sym.name: env[sym.name]}).data
        for sym in vc.symbolics
        if sym.assumption is not None
    )
    for name, expr in vc.definitions:
        env[name] = eval_expr(expr, env)
    hypotheses = all(eval_expr(h, env).data for h in vc.hypotheses)
    conclusion = bool(eval_expr(vc.conclusion, env).data)
    replay = Replay(env=env, assumptions_hold=assumptions, hypotheses_hold=hypotheses, conclusion_holds=conclusion)
    if not replay.genuine:
        logger.warning("⚠️  %s: model does not falsify the condition when evaluated", vc.label)
    return replay
