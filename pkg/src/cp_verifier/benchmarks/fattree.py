"""k-ary fattree layouts.

Node ids follow the usual numbering: cores ``c0 .. c{(k/2)^2 - 1}``, then
per pod ``p`` (base ``(k/2)^2 + p*k``) aggregation nodes ``a{base+j}``
and edge nodes ``e{base+k/2+j}``. Aggregation node ``j`` of every pod
links to cores ``j*k/2 .. j*k/2 + k/2 - 1``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx

from cp_verifier.model.network import Edge, Topology


class Role(str, Enum):
    CORE = "core"
    AGGREGATION = "aggregation"
    EDGE = "edge"


@dataclass(frozen=True)
class FattreeLayout:
    k: int
    roles: Mapping[str, Role]
    pods: Mapping[str, Optional[int]]
    topology: Topology

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self.topology.nodes

    def with_role(self, role: Role) -> List[str]:
        return [v for v in self.nodes if self.roles[v] == role]

    @property
    def edge_nodes(self) -> List[str]:
        return self.with_role(Role.EDGE)

    def is_down(self, edge: Edge) -> bool:
        """Whether the link points away from the cores."""
        order = {Role.CORE: 0, Role.AGGREGATION: 1, Role.EDGE: 2}
        u, v = edge
        return order[self.roles[u]] < order[self.roles[v]]


def fattree(k: int) -> FattreeLayout:
    """Build a k-fattree: ``1.25 k^2`` nodes and ``k^3`` directed edges.

    Raises:
        ValueError: If ``k`` is odd or smaller than 2.
    """
    if not isinstance(k, int) or k < 2 or k % 2:
        raise ValueError(f"fattree needs an even k >= 2, got {k!r}")
    half = k // 2
    roles: Dict[str, Role] = {}
    pods: Dict[str, Optional[int]] = {}
    links: List[Edge] = []

    cores = [f"c{i}" for i in range(half * half)]
    for c in cores:
        roles[c] = Role.CORE
        pods[c] = None
    for p in range(k):
        base = half * half + p * k
        aggs = [f"a{base + j}" for j in range(half)]
        edges = [f"e{base + half + j}" for j in range(half)]
        for a in aggs:
            roles[a] = Role.AGGREGATION
            pods[a] = p
        for e in edges:
            roles[e] = Role.EDGE
            pods[e] = p
        for j, a in enumerate(aggs):
            for c in cores[j * half:(j + 1) * half]:
                links.append((c, a))
            for e in edges:
                links.append((a, e))

    directed: List[Edge] = []
    for u, v in links:
        directed += [(u, v), (v, u)]
    return FattreeLayout(k=k, roles=roles, pods=pods, topology=Topology(tuple(roles), tuple(directed)))


def distance(layout: FattreeLayout, dest: str, v: str) -> int:
    """Hops from edge node ``dest`` to ``v`` along shortest up-down paths."""
    if layout.roles[dest] != Role.EDGE:
        raise ValueError(f"destination {dest} is not an edge node")
    if v == dest:
        return 0
    same_pod = layout.pods[v] == layout.pods[dest]
    role = layout.roles[v]
    if role == Role.AGGREGATION:
        return 1 if same_pod else 3
    if role == Role.CORE:
        return 2
    return 2 if same_pod else 4


def adjacent(layout: FattreeLayout, dest: str, v: str) -> bool:
    """``dest`` itself or an aggregation node in its pod."""
    return distance(layout, dest, v) <= 1


def bfs_distances(layout: FattreeLayout, dest: str) -> Dict[str, int]:
    """Breadth-first hop counts from ``dest``."""
    return dict(nx.single_source_shortest_path_length(layout.topology.to_digraph(), dest))
