"""Fattree data center benchmarks: reachability, path length, valley
freedom and hijack filtering, for one destination or all of them.

Routes carry the eBGP attributes prefix, administrative distance, local
preference, MED, origin, path length and communities. Down links (core to
aggregation, aggregation to edge) add community ``D`` in the valley-free
policy; up links drop routes that carry it.
"""

import logging
from collections import defaultdict
from typing import Callable, Dict, List, Optional, Tuple

from cp_verifier.benchmarks.fattree import FattreeLayout, Role, distance, fattree
from cp_verifier.benchmarks.fixtures import FAIL, PASS, BenchmarkFixture, ExpectedFailure
from cp_verifier.benchmarks.policies import MAX, MIN, bump, lexicographic_merge, on_route, update
from cp_verifier.model.expr import (
    And,
    Eq,
    Expr,
    If,
    Leq,
    Literal,
    Neq,
    NoneOf,
    Not,
    Or,
    RecordMake,
    SetContains,
    SetInsert,
    Some,
    Var,
    get,
    has_route,
    is_none,
    is_some,
    lit,
    nat,
)
from cp_verifier.model.network import ROUTE_VAR, Edge, NetworkInstance, SymbolicVar, Topology
from cp_verifier.model.sorts import BOOL, INT, STRING_SET, BitVecSort, EnumSort, OptionSort, ValueSort, record_sort
from cp_verifier.model.values import FALSE, TRUE, bv_value, enum_value, set_value
from cp_verifier.temporal.lowering import globally
from cp_verifier.temporal.ops import AndOp, Annotation, Finally, Globally, OrOp, TemporalOp, Until

logger = logging.getLogger(__name__)

BV32 = BitVecSort(32)
ORIGIN = EnumSort(("egp", "igp", "unknown"))
DOWN = "D"
HIJACKER = "h"
DEST_VAR = "dest"
PREFIX_VAR = "p"

s = Var(ROUTE_VAR)

# A per-node temporal operator for a destination at the given distance.
MakeOp = Callable[[int], TemporalOp]


def _bv(n: int) -> Literal:
    return lit(bv_value(n, 32))


def route_sort(hijack: bool = False) -> OptionSort:
    fields: Dict[str, ValueSort] = {
        "prefix": BV32,
        "ad": BV32,
        "lp": BV32,
        "med": BV32,
        "origin": ORIGIN,
        "len": INT,
        "comms": STRING_SET,
    }
    if hijack:
        fields["tag"] = BOOL
    return OptionSort(record_sort(**fields))


def _dest_route(prefix: Expr, hijack: bool) -> Expr:
    fields: List[Tuple[str, Expr]] = [
        ("prefix", prefix),
        ("ad", _bv(20)),
        ("lp", _bv(100)),
        ("med", _bv(0)),
        ("origin", lit(enum_value(ORIGIN, "igp"))),
        ("len", nat(0)),
        ("comms", lit(set_value(()))),
    ]
    if hijack:
        fields.append(("tag", lit(FALSE)))
    return Some(RecordMake(tuple(fields)))


def _dest_sort(layout: FattreeLayout) -> EnumSort:
    return EnumSort(tuple(layout.edge_nodes))


def _is_dest(layout: FattreeLayout, d: str) -> Expr:
    return Eq(Var(DEST_VAR), lit(enum_value(_dest_sort(layout), d)))


def _network(
    layout: FattreeLayout,
    name: str,
    dest: Optional[str],
    transfer_for: Callable[[Edge, OptionSort], Expr],
    hijack: bool = False,
) -> NetworkInstance:
    """Assemble a fattree network; ``dest=None`` makes the destination symbolic."""
    sort = route_sort(hijack)
    none = NoneOf(sort.inner)
    prefix = Var(PREFIX_VAR) if hijack else _bv(0)
    symbolics: List[SymbolicVar] = []
    init: Dict[str, Expr] = {}
    for v in layout.nodes:
        if dest is not None:
            init[v] = _dest_route(prefix, hijack) if v == dest else none
        elif layout.roles[v] == Role.EDGE:
            init[v] = If(_is_dest(layout, v), _dest_route(prefix, hijack), none)
        else:
            init[v] = none
    if dest is None:
        symbolics.append(SymbolicVar(DEST_VAR, _dest_sort(layout)))
    nodes = layout.nodes
    edges = layout.topology.edges
    if hijack:
        symbolics.append(SymbolicVar(PREFIX_VAR, BV32))
        symbolics.append(SymbolicVar("h_route", sort))
        init[HIJACKER] = Var("h_route")
        nodes = nodes + (HIJACKER,)
        for c in layout.with_role(Role.CORE):
            edges = edges + ((HIJACKER, c), (c, HIJACKER))
    transfer = {edge: transfer_for(edge, sort) for edge in edges}
    logger.debug("fattree %s: %d nodes, %d edges", name, len(nodes), len(edges))
    return NetworkInstance(
        topology=Topology(nodes, edges),
        route_sort=sort,
        init=init,
        transfer=transfer,
        merge=lexicographic_merge(sort, [("lp", MAX), ("len", MIN)], [DOWN]),
        symbolics=tuple(symbolics),
        name=name,
    )


def _forward(edge: Edge, sort: OptionSort) -> Expr:
    return on_route(sort, lambda r: Some(bump(r)))


def _by_distance(layout: FattreeLayout, dest: Optional[str], v: str, make: MakeOp) -> TemporalOp:
    """Interface of ``v``: ``make(distance)`` for a concrete destination, or a
    conjunction over distance classes guarded by the symbolic destination."""
    if dest is not None:
        return make(distance(layout, dest, v))
    groups: Dict[int, List[str]] = defaultdict(list)
    for d in layout.edge_nodes:
        groups[distance(layout, d, v)].append(d)
    ops: List[TemporalOp] = []
    for dist in sorted(groups):
        cond = Or(tuple(_is_dest(layout, d) for d in groups[dist]))
        ops.append(OrOp(Globally(Not(cond)), make(dist)))
    out = ops[0]
    for op in ops[1:]:
        out = AndOp(out, op)
    return out


def _annotate(layout: FattreeLayout, dest: Optional[str], make: MakeOp, extra: Tuple[str, ...] = ()) -> Annotation:
    by_node = {v: _by_distance(layout, dest, v, make) for v in layout.nodes}
    for v in extra:
        by_node[v] = globally()
    return Annotation(by_node)


def _uniform(layout: FattreeLayout, op: TemporalOp, extra: Tuple[str, ...] = ()) -> Annotation:
    by_node = {v: op for v in layout.nodes}
    for v in extra:
        by_node[v] = globally()
    return Annotation(by_node)


def _label(kind: str, k: int, dest: Optional[str]) -> str:
    return f"{'sp' if dest is not None else 'all'}-{kind}-k{k}"


def _dest(layout: FattreeLayout, dest: Optional[str], all_prefix: bool) -> Optional[str]:
    if all_prefix:
        return None
    chosen = dest or layout.edge_nodes[0]
    if layout.roles.get(chosen) != Role.EDGE:
        raise ValueError(f"destination {chosen} is not an edge node")
    return chosen


def reach_op(dist: int) -> TemporalOp:
    return Finally(dist, Globally(is_some(s)))


def build_reach(k: int, dest: Optional[str] = None, all_prefix: bool = False, early: Optional[str] = None) -> BenchmarkFixture:
    """Every node eventually has a route; the witness is its distance.

    ``early`` names a node whose witness time is one step too soon.
    """
    layout = fattree(k)
    dest = _dest(layout, dest, all_prefix)
    n = _network(layout, _label("reach", k, dest), dest, _forward)
    interfaces = _annotate(layout, dest, reach_op)
    failures: Tuple[ExpectedFailure, ...] = ()
    if early is not None:
        if dest is None:
            raise ValueError("early witnesses need a concrete destination")
        dist = distance(layout, dest, early)
        if dist == 0:
            raise ValueError("the destination has no witness to move earlier")
        by_node = dict(interfaces.by_node)
        by_node[early] = reach_op(dist - 1)
        interfaces = Annotation(by_node)
        failures = (ExpectedFailure(early, "initial" if dist == 1 else "inductive", dist - 1),)
    return BenchmarkFixture(
        name=_label("reach", k, dest) + ("-early" if early else ""),
        network=n,
        interfaces=interfaces,
        properties=_uniform(layout, reach_op(4)),
        expected=FAIL if early else PASS,
        expected_failures=failures,
    )


def _len_at_most(bound: int) -> Expr:
    return has_route(s, lambda r: Leq(get(r, "len"), nat(bound)))


def _lp_is_100() -> Expr:
    return Or((is_none(s), has_route(s, lambda r: Eq(get(r, "lp"), _bv(100)))))


def build_length(
    k: int,
    dest: Optional[str] = None,
    all_prefix: bool = False,
    property_bound: int = 4,
    with_lp: bool = True,
) -> BenchmarkFixture:
    """Every node eventually has a route of at most 4 hops."""
    layout = fattree(k)
    dest = _dest(layout, dest, all_prefix)
    n = _network(layout, _label("length", k, dest), dest, _forward)

    def make(dist: int) -> TemporalOp:
        eventually = Finally(dist, Globally(_len_at_most(dist)))
        return AndOp(Globally(_lp_is_100()), eventually) if with_lp else eventually

    weakened = property_bound < 4
    return BenchmarkFixture(
        name=_label("length", k, dest) + ("" if with_lp else "-nolp") + ("-weak" if weakened else ""),
        network=n,
        interfaces=_annotate(layout, dest, make),
        properties=_uniform(layout, Finally(4, Globally(_len_at_most(property_bound)))),
        expected=FAIL if weakened or not with_lp else PASS,
    )


def _vf_transfer(layout: FattreeLayout) -> Callable[[Edge, OptionSort], Expr]:
    def transfer(edge: Edge, sort: OptionSort) -> Expr:
        if layout.is_down(edge):
            return on_route(sort, lambda r: Some(update(bump(r), comms=SetInsert(get(r, "comms"), DOWN))))
        none = NoneOf(sort.inner)
        return on_route(sort, lambda r: If(SetContains(get(r, "comms"), DOWN), none, Some(bump(r))))

    return transfer


def build_vf(k: int, dest: Optional[str] = None, all_prefix: bool = False, with_len: bool = True) -> BenchmarkFixture:
    """Valley-free routing still reaches every node along shortest paths."""
    layout = fattree(k)
    dest = _dest(layout, dest, all_prefix)
    n = _network(layout, _label("vf", k, dest), dest, _vf_transfer(layout))

    def make(dist: int) -> TemporalOp:
        def good(r: Expr) -> Expr:
            parts = [Eq(get(r, "lp"), _bv(100))]
            if with_len:
                parts.append(Eq(get(r, "len"), nat(dist)))
            if dist <= 1:
                parts.append(Not(SetContains(get(r, "comms"), DOWN)))
            return And(tuple(parts))

        return Until(is_none(s), dist, Globally(has_route(s, good)))

    return BenchmarkFixture(
        name=_label("vf", k, dest) + ("" if with_len else "-nolen"),
        network=n,
        interfaces=_annotate(layout, dest, make),
        properties=_uniform(layout, reach_op(4)),
        expected=PASS if with_len else FAIL,
    )


def _hijack_transfer(filtered: bool) -> Callable[[Edge, OptionSort], Expr]:
    def transfer(edge: Edge, sort: OptionSort) -> Expr:
        if edge[0] != HIJACKER:
            return _forward(edge, sort)
        none = NoneOf(sort.inner)

        def imported(r: Expr) -> Expr:
            marked = Some(update(bump(r), tag=lit(TRUE), ad=_bv(200), lp=_bv(0)))
            if not filtered:
                return marked
            return If(Eq(get(r, "prefix"), Var(PREFIX_VAR)), none, marked)

        return on_route(sort, imported)

    return transfer


def build_hijack(k: int, dest: Optional[str] = None, all_prefix: bool = False, filtered: bool = True) -> BenchmarkFixture:
    """External announcements never displace the internal prefix ``p``.

    The hijacker ``h`` peers with every core and may announce anything;
    cores drop its announcements for ``p`` and import the rest tagged,
    with ``ad = 200`` and ``lp = 0``.
    """
    layout = fattree(k)
    dest = _dest(layout, dest, all_prefix)
    n = _network(layout, _label("hijack", k, dest), dest, _hijack_transfer(filtered), hijack=True)
    p = Var(PREFIX_VAR)

    def internal(r: Expr) -> Expr:
        return And((Eq(get(r, "prefix"), p), Not(get(r, "tag"))))

    def make(dist: int) -> TemporalOp:
        def known(r: Expr) -> Expr:
            return Or((
                And((internal(r), Eq(get(r, "ad"), _bv(20)), Eq(get(r, "lp"), _bv(100)))),
                And((Neq(get(r, "prefix"), p), get(r, "tag"), Eq(get(r, "ad"), _bv(200)), Eq(get(r, "lp"), _bv(0)))),
            ))

        never_hijacked = Globally(Or((is_none(s), has_route(s, known))))
        return AndOp(Finally(dist, Globally(has_route(s, internal))), never_hijacked)

    return BenchmarkFixture(
        name=_label("hijack", k, dest) + ("" if filtered else "-unfiltered"),
        network=n,
        interfaces=_annotate(layout, dest, make, extra=(HIJACKER,)),
        properties=_uniform(layout, Finally(4, Globally(has_route(s, internal))), extra=(HIJACKER,)),
        expected=PASS if filtered else FAIL,
    )


BUILDERS = {
    "reach": build_reach,
    "length": build_length,
    "vf": build_vf,
    "hijack": build_hijack,
}
