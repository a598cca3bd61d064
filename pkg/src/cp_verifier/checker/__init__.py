"""Modular verification conditions, their checking and reports."""

from cp_verifier.checker.modular import check_modular, check_node
from cp_verifier.checker.replay import replay_counterexample
from cp_verifier.checker.schemas import (
    CheckReport,
    ConditionKind,
    ConditionResult,
    ConditionStatus,
    Counterexample,
    NodeVerdict,
    Outcome,
    percentile,
)
from cp_verifier.checker.strawperson import check_strawperson
from cp_verifier.checker.vcs import (
    VerificationCondition,
    encode_condition,
    vc_inductive,
    vc_initial,
    vc_safety,
    vc_strawperson,
)

__all__ = [
    "CheckReport",
    "ConditionKind",
    "ConditionResult",
    "ConditionStatus",
    "Counterexample",
    "NodeVerdict",
    "Outcome",
    "VerificationCondition",
    "check_modular",
    "check_node",
    "check_strawperson",
    "encode_condition",
    "percentile",
    "replay_counterexample",
    "vc_inductive",
    "vc_initial",
    "vc_safety",
    "vc_strawperson",
]
