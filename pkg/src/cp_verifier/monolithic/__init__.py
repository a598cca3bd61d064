"""Monolithic stable-state baseline."""

from cp_verifier.monolithic.stable import (
    StableStateEncoding,
    check_monolithic,
    encode_stable,
    monolithic_report,
    stable_condition,
)

__all__ = ["StableStateEncoding", "check_monolithic", "encode_stable", "monolithic_report", "stable_condition"]
