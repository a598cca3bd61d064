"""Human-readable and JSON rendering of reports, traces and diagnostics."""

import json
from typing import Any, Dict, List, Optional

from cp_verifier.checker.schemas import CheckReport, ConditionResult, ConditionStatus, Counterexample
from cp_verifier.model.network import Diagnostic

RULE = "=" * 80
THIN_RULE = "-" * 80

_MARKS = {
    ConditionStatus.VALID: "✅",
    ConditionStatus.COUNTEREXAMPLE: "❌",
    ConditionStatus.UNKNOWN: "⚠️",
    ConditionStatus.FAILURE: "⚠️",
    ConditionStatus.SKIPPED: "·",
}


def format_counterexample(cx: Counterexample, indent: str = "      ") -> List[str]:
    """
    Render a counterexample as indented lines.

    Args:
        cx: The counterexample
        indent: Prefix for every line

    Returns:
        Lines naming the time, the input routes, the symbolic values and
        the computed route
    """
    lines = []
    if cx.time is not None:
        lines.append(f"{indent}counterexample for time t = {cx.time}")
    for name, route in cx.routes.items():
        lines.append(f"{indent}{name}: {route}")
    for name, value in cx.symbolics.items():
        lines.append(f"{indent}symbolic {name} = {value}")
    if cx.result is not None:
        lines.append(f"{indent}merged route: {cx.result}")
    return lines


def format_condition(result: ConditionResult) -> str:
    text = f"{result.kind.value} {_MARKS[result.status]}"
    if result.status in (ConditionStatus.UNKNOWN, ConditionStatus.FAILURE):
        text += f" ({result.status.value}: {result.reason or 'no reason given'})"
    return text


def format_report(report: CheckReport) -> str:
    """Render a check report as text with one block per node."""
    title = f"{report.mode} check of {report.network}"
    if report.mode == "modular":
        title += f" (delay {report.delay})"
    lines = [RULE, title, RULE]
    if report.unsound:
        lines.append("⚠️  UNSOUND: the time-free check can pass interfaces no execution satisfies")
    width = max((len(v.node) for v in report.per_node), default=0)
    for verdict in report.per_node:
        mark = "✅" if verdict.passed else ("⚠️" if verdict.incomplete else "❌")
        conditions = "  ".join(format_condition(c) for c in verdict.conditions)
        lines.append(f"{mark} {verdict.node.ljust(width)}  {conditions}  {verdict.total_seconds:.3f}s")
        for result in verdict.conditions:
            if result.counterexample is not None:
                lines.extend(format_counterexample(result.counterexample))
    lines.append(THIN_RULE)
    lines.append(
        f"overall: {report.overall.value.upper()}   nodes: {len(report.per_node)}   "
        f"total {report.total_wall:.3f}s   median {report.median_node_time:.3f}s   "
        f"p99 {report.p99_node_time:.3f}s"
    )
    return "\n".join(lines)


def format_diagnostics(diagnostics: List[Diagnostic]) -> str:
    return "\n".join(f"❌ {d.kind} at {d.location}: {d.message}" for d in diagnostics)


def format_run(state: Dict[str, Any]) -> str:
    """Render the final graph state as text."""
    lines: List[str] = []
    load = state.get("load")
    if load and load.get("dumped"):
        for kind, path in load["dumped"].items():
            lines.append(f"📝 {kind} written to {path}")
    validate = state.get("validate")
    if validate and validate.get("diagnostics"):
        lines.append(format_diagnostics([Diagnostic.model_validate(d) for d in validate["diagnostics"]]))
    elif validate and not state.get("simulate") and not state.get("report") and not state.get("error"):
        lines.append(f"✅ {load['network'] if load else 'network'} is well-formed")
        laws = validate.get("merge_laws")
        if laws:
            lines.append(f"merge laws sampled {laws['samples']} times (seed {laws['seed']})")
    if state.get("simulate"):
        lines.append(state["simulate"]["table"])
    if state.get("report"):
        lines.append(format_report(CheckReport.model_validate(state["report"])))
    for warning in state.get("warnings") or []:
        lines.append(f"⚠️  {warning}")
    if state.get("error") and not (validate and validate.get("diagnostics")):
        lines.append(f"❌ {state.get('error_kind', 'internal')} error: {state['error']}")
    return "\n".join(lines)


def run_to_json(state: Dict[str, Any], exit_status: Optional[int] = None) -> str:
    """Render the final graph state as a JSON document."""
    doc = {
        "exit_status": exit_status if exit_status is not None else state.get("exit_status"),
        "load": state.get("load"),
        "validate": state.get("validate"),
        "simulate": state.get("simulate"),
        "report": state.get("report"),
        "warnings": state.get("warnings") or [],
        "error": state.get("error"),
        "error_kind": state.get("error_kind"),
    }
    return json.dumps(doc, indent=2, sort_keys=True)
