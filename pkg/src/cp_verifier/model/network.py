"""Network instances: topology, route sort, and the policy functions over it."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from cp_verifier.model.errors import SortError, UnboundVar
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.expr import Expr, Literal, free_vars, string_literals, substitute
from cp_verifier.model.sorts import BOOL, ValueSort
from cp_verifier.model.typecheck import sort_check
from cp_verifier.model.values import Value, conforms, render_value

logger = logging.getLogger(__name__)

ROUTE_VAR = "s"
MERGE_LEFT = "s1"
MERGE_RIGHT = "s2"
TIME_VAR = "t"
RESERVED_NAMES = frozenset({ROUTE_VAR, MERGE_LEFT, MERGE_RIGHT, TIME_VAR})

Edge = Tuple[str, str]


@dataclass(frozen=True)
class Topology:
    """Directed graph of routers; node order is the declaration order."""

    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    @cached_property
    def _preds(self) -> Dict[str, Tuple[str, ...]]:
        table: Dict[str, List[str]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            table.setdefault(v, []).append(u)
        return {v: tuple(sorted(set(us))) for v, us in table.items()}

    def preds(self, v: str) -> Tuple[str, ...]:
        """Return the in-neighbors of ``v`` sorted by node id."""
        return self._preds.get(v, ())

    def succs(self, u: str) -> Tuple[str, ...]:
        return tuple(sorted({v for a, v in self.edges if a == u}))

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class SymbolicVar:
    """A network input left open; its assumption is assumed, never checked."""

    name: str
    sort: ValueSort
    assumption: Optional[Expr] = None


@dataclass(frozen=True)
class NetworkInstance:
    """A routing network: topology, route sort, init, transfer and merge."""

    topology: Topology
    route_sort: ValueSort
    init: Mapping[str, Expr]
    transfer: Mapping[Edge, Expr]
    merge: Expr
    symbolics: Tuple[SymbolicVar, ...] = ()
    name: str = field(default="network", compare=False)

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self.topology.nodes

    def preds(self, v: str) -> Tuple[str, ...]:
        return self.topology.preds(v)

    def symbolic_sorts(self) -> Dict[str, ValueSort]:
        return {sym.name: sym.sort for sym in self.symbolics}

    def symbolic(self, name: str) -> SymbolicVar:
        for sym in self.symbolics:
            if sym.name == name:
                return sym
        raise KeyError(name)

    def is_closed(self) -> bool:
        return not self.symbolics and all(not free_vars(e) for e in self.init.values())

    def strings(self) -> FrozenSet[str]:
        """Return the string literals mentioned anywhere in the network."""
        exprs: List[Expr] = [self.merge, *self.init.values(), *self.transfer.values()]
        exprs += [sym.assumption for sym in self.symbolics if sym.assumption is not None]
        out: FrozenSet[str] = frozenset()
        for expr in exprs:
            out |= string_literals(expr)
        return out


class Diagnostic(BaseModel):
    """One violated network or annotation invariant."""

    kind: str = Field(..., description="Invariant class, e.g. UnknownNode or SortDiagnostic")
    location: str = Field(..., description="Node, edge or expression the diagnostic is about")
    message: str = Field(..., description="Human readable detail")

    def __str__(self) -> str:
        return f"{self.kind}({self.location}): {self.message}"


def edge_label(edge: Edge) -> str:
    return f"{edge[0]}->{edge[1]}"


def validate_network(n: NetworkInstance) -> List[Diagnostic]:
    """Return every violated invariant of ``n``; empty means valid."""
    diags: List[Diagnostic] = []
    nodes = n.topology.nodes
    node_set = set(nodes)

    seen = set()
    for v in nodes:
        if v in seen:
            diags.append(Diagnostic(kind="DuplicateNode", location=v, message="node declared twice"))
        seen.add(v)

    seen_edges = set()
    for u, v in n.topology.edges:
        label = edge_label((u, v))
        for endpoint in (u, v):
            if endpoint not in node_set:
                diags.append(Diagnostic(kind="UnknownNode", location=endpoint, message=f"edge {label} references an undeclared node"))
        if u == v:
            diags.append(Diagnostic(kind="SelfLoop", location=label, message="self-loops are not allowed"))
        if (u, v) in seen_edges:
            diags.append(Diagnostic(kind="DuplicateEdge", location=label, message="edge declared twice"))
        seen_edges.add((u, v))

    sym_env: Dict[str, ValueSort] = {}
    for sym in n.symbolics:
        if sym.name in RESERVED_NAMES:
            diags.append(Diagnostic(kind="ReservedName", location=sym.name, message="symbolic name shadows a reserved variable"))
        if sym.name in sym_env:
            diags.append(Diagnostic(kind="DuplicateSymbolic", location=sym.name, message="symbolic declared twice"))
        sym_env[sym.name] = sym.sort
        if sym.assumption is not None:
            diags += _check_sort(sym.assumption, {sym.name: sym.sort}, BOOL, f"assume {sym.name}")

    for v in nodes:
        if v not in n.init:
            diags.append(Diagnostic(kind="MissingInit", location=v, message="no initial route"))
        else:
            diags += _check_sort(n.init[v], sym_env, n.route_sort, f"init {v}")
    for v in n.init:
        if v not in node_set:
            diags.append(Diagnostic(kind="ExtraInit", location=v, message="initial route for an undeclared node"))

    for edge in n.topology.edges:
        if edge not in n.transfer:
            diags.append(Diagnostic(kind="MissingTransfer", location=edge_label(edge), message="no transfer function"))
        else:
            env = {**sym_env, ROUTE_VAR: n.route_sort}
            diags += _check_sort(n.transfer[edge], env, n.route_sort, f"edge {edge_label(edge)}")
    for edge in n.transfer:
        if edge not in seen_edges:
            diags.append(Diagnostic(kind="ExtraTransfer", location=edge_label(edge), message="transfer for an undeclared edge"))

    merge_env = {**sym_env, MERGE_LEFT: n.route_sort, MERGE_RIGHT: n.route_sort}
    diags += _check_sort(n.merge, merge_env, n.route_sort, "merge")
    return diags


def _check_sort(expr: Expr, env: Mapping[str, ValueSort], expected: ValueSort, location: str) -> List[Diagnostic]:
    try:
        found = sort_check(expr, env)
    except SortError as e:
        return [Diagnostic(kind="SortDiagnostic", location=location, message=str(e))]
    except UnboundVar as e:
        return [Diagnostic(kind="UnboundVariable", location=location, message=str(e))]
    if found != expected:
        return [Diagnostic(kind="SortDiagnostic", location=location, message=f"expected {expected}, found {found}")]
    return []


def merge_values(n: NetworkInstance, left: Value, right: Value, env: Mapping[str, Value]) -> Value:
    return eval_expr(n.merge, {**env, MERGE_LEFT: left, MERGE_RIGHT: right})


def transfer_value(n: NetworkInstance, edge: Edge, route: Value, env: Mapping[str, Value]) -> Value:
    return eval_expr(n.transfer[edge], {**env, ROUTE_VAR: route})


def fold_routes(
    n: NetworkInstance,
    v: str,
    init: Value,
    incoming: Mapping[str, Value],
    env: Mapping[str, Value] = {},
) -> Value:
    """Compute ``init_v ⊕ T(u1) ⊕ ... ⊕ T(uk)`` in sorted predecessor order.

    This is the single definition of a node's update shared by the
    simulator, counterexample replay and stable-state checks.
    """
    acc = init
    for u in n.preds(v):
        acc = merge_values(n, acc, transfer_value(n, (u, v), incoming[u], env), env)
    return acc


def close_network(n: NetworkInstance, assignment: Mapping[str, Value]) -> NetworkInstance:
    """Instantiate every symbolic variable with a concrete value.

    Raises:
        ValueError: If a symbolic is unassigned, ill-sorted, or its
            assumption does not hold for the given value.
    """
    mapping: Dict[str, Expr] = {}
    for sym in n.symbolics:
        if sym.name not in assignment:
            raise ValueError(f"no value for symbolic {sym.name!r}")
        value = assignment[sym.name]
        if not conforms(value, sym.sort):
            raise ValueError(f"value {render_value(value)} does not have sort {sym.sort}")
        if sym.assumption is not None and not eval_expr(sym.assumption, {sym.name: value}).data:
            raise ValueError(f"value {render_value(value)} violates the assumption on {sym.name!r}")
        mapping[sym.name] = Literal(value)
    logger.debug("Closing %s over %d symbolics", n.name, len(mapping))
    return NetworkInstance(
        topology=n.topology,
        route_sort=n.route_sort,
        init={v: substitute(e, mapping) for v, e in n.init.items()},
        transfer={edge: substitute(e, mapping) for edge, e in n.transfer.items()},
        merge=substitute(n.merge, mapping),
        symbolics=(),
        name=n.name,
    )
