"""Seeded corpus of small closed hop-count networks."""

import random
from typing import Dict, List

from cp_verifier.benchmarks.policies import MIN, bump, lexicographic_merge, on_route, update
from cp_verifier.model.expr import Expr, If, NoneOf, Some, Var, get, is_some, lit
from cp_verifier.model.network import ROUTE_VAR, Edge, NetworkInstance, Topology
from cp_verifier.model.sorts import BOOL, INT, OptionSort, record_sort
from cp_verifier.model.values import TRUE, bool_value, int_value, record_value, some_value
from cp_verifier.simulator.trace import SimulationTrace
from cp_verifier.temporal.lowering import globally
from cp_verifier.temporal.ops import Annotation, Finally, Globally, TemporalOp

HOP_RECORD = record_sort(len=INT, tag=BOOL)
HOP_ROUTE = OptionSort(HOP_RECORD)
MAX_NODES = 6

# Transfer kinds and their weights.
POLICIES = {"forward": 5, "tag": 2, "drop": 1, "filter": 1}


def _transfer(kind: str) -> Expr:
    none = NoneOf(HOP_ROUTE.inner)
    if kind == "drop":
        return none
    if kind == "tag":
        return on_route(HOP_ROUTE, lambda r: Some(update(bump(r), tag=lit(TRUE))))
    if kind == "filter":
        return on_route(HOP_ROUTE, lambda r: If(get(r, "tag"), Some(bump(r)), none))
    return on_route(HOP_ROUTE, lambda r: Some(bump(r)))


def random_hop_network(seed: int) -> NetworkInstance:
    """Build a closed network of 2 to 6 routers from ``seed``.

    Router ``r0`` always originates a route; the others originate one with
    small probability. Each directed link exists with probability 0.5 and
    gets a forward, tag, drop or tag-filter policy.
    """
    rng = random.Random(seed)
    nodes = tuple(f"r{i}" for i in range(rng.randint(2, MAX_NODES)))
    edges: List[Edge] = [(u, v) for u in nodes for v in nodes if u != v and rng.random() < 0.5]
    kinds, weights = zip(*POLICIES.items())
    transfer = {edge: _transfer(rng.choices(kinds, weights)[0]) for edge in edges}
    init: Dict[str, Expr] = {}
    for v in nodes:
        if v == "r0" or rng.random() < 0.2:
            fields = {"len": int_value(rng.randint(0, 2)), "tag": bool_value(rng.random() < 0.5)}
            init[v] = lit(some_value(record_value(HOP_RECORD, fields)))
        else:
            init[v] = NoneOf(HOP_ROUTE.inner)
    return NetworkInstance(
        topology=Topology(nodes, tuple(edges)),
        route_sort=HOP_ROUTE,
        init=init,
        transfer=transfer,
        merge=lexicographic_merge(HOP_ROUTE, [("len", MIN)]),
        name=f"random-{seed}",
    )


def has_filters(n: NetworkInstance) -> bool:
    """Whether some link drops untagged routes."""
    return any(expr == _transfer("filter") for expr in n.transfer.values())


def reachability_interface(n: NetworkInstance, trace: SimulationTrace) -> Annotation:
    """Witnessed reachability read off a converged simulation.

    A node that ends with a route gets ``F_tau G(s != none)`` where ``tau``
    follows its last empty step; a node that ends empty gets ``G(true)``.
    Networks without tag filters always pass with these interfaces;
    a filter can make them fail.
    """
    s = Var(ROUTE_VAR)
    by_node: Dict[str, TemporalOp] = {}
    for v in n.nodes:
        states = trace.states[v]
        if states[-1].is_none:
            by_node[v] = globally()
            continue
        empty = [t for t, route in enumerate(states) if route.is_none]
        by_node[v] = Finally(empty[-1] + 1 if empty else 0, Globally(is_some(s)))
    return Annotation(by_node)
