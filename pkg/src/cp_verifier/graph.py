"""LangGraph for a verification run."""

from langgraph.graph import END, START, StateGraph

from cp_verifier.nodes.check.check import check_node
from cp_verifier.nodes.load.load import load_node
from cp_verifier.nodes.monolithic.monolithic import monolithic_node
from cp_verifier.nodes.report.report import report_node
from cp_verifier.nodes.simulate.simulate import simulate_node
from cp_verifier.nodes.strawperson.strawperson import strawperson_node
from cp_verifier.nodes.validate.validate import validate_node
from cp_verifier.types import State


def build_graph():
    """Build the verification graph."""
    g = StateGraph(State)

    # Add nodes
    g.add_node("load", load_node)
    g.add_node("validate", validate_node)
    g.add_node("simulate", simulate_node)
    g.add_node("check", check_node)
    g.add_node("monolithic", monolithic_node)
    g.add_node("strawperson", strawperson_node)
    g.add_node("report", report_node)

    g.add_edge(START, "load")

    def route_from_load(state: State) -> str:
        """Route from load node based on success/failure."""
        if state.get("error"):
            return "report"
        return "validate"

    def route_from_validate(state: State) -> str:
        """Route from validate node to the step the mode asks for."""
        if state.get("error"):
            return "report"
        mode = state.get("config", {}).get("mode", "modular")
        if mode == "simulate":
            return "simulate"
        if mode == "monolithic":
            return "monolithic"
        if mode == "strawperson":
            return "strawperson"
        if mode == "validate":
            return "report"
        return "check"

    g.add_conditional_edges(
        "load",
        route_from_load,
        {
            "validate": "validate",
            "report": "report",
        },
    )

    g.add_conditional_edges(
        "validate",
        route_from_validate,
        {
            "simulate": "simulate",
            "check": "check",
            "monolithic": "monolithic",
            "strawperson": "strawperson",
            "report": "report",
        },
    )

    # Every step ends in the report
    for step in ("simulate", "check", "monolithic", "strawperson"):
        g.add_edge(step, "report")
    g.add_edge("report", END)

    return g.compile()


# Export the graph for LangGraph CLI
graph = build_graph()
