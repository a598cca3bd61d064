"""A synthetic wide-area network with the block-to-external (BTE) property.

Ten internal routers form a ring with two chords; each has two external
neighbors. Every router starts from a symbolic route, and externals are
assumed not to announce BTE-tagged routes. Imports from some peers add
``BTE``; exports to externals drop anything carrying it. The interface is
the property itself.
"""

from typing import Dict, List, Tuple

from cp_verifier.benchmarks.fixtures import FAIL, PASS, BenchmarkFixture, ExpectedFailure
from cp_verifier.benchmarks.policies import MAX, MIN, bump, lexicographic_merge, on_route, update
from cp_verifier.model.expr import (
    Expr,
    If,
    NoneOf,
    Not,
    SetContains,
    SetInsert,
    SetRemove,
    Some,
    Var,
    all_routes,
    get,
    lit,
)
from cp_verifier.model.network import ROUTE_VAR, Edge, NetworkInstance, SymbolicVar, Topology
from cp_verifier.model.sorts import INT, STRING_SET, BitVecSort, OptionSort, record_sort
from cp_verifier.model.values import bv_value
from cp_verifier.temporal.lowering import globally
from cp_verifier.temporal.ops import Annotation, Globally

BTE = "BTE"
CUST = "CUST"
PEER = "PEER"
INTERNAL = tuple(f"i{j}" for j in range(10))
EXTERNAL = tuple(f"x{j}" for j in range(20))
CHORDS = (("i0", "i5"), ("i2", "i7"))

# The export towards this neighbor skips the BTE filter in the broken variant.
BROKEN_NEIGHBOR = "x3"

ROUTE = OptionSort(record_sort(lp=BitVecSort(32), len=INT, comms=STRING_SET))

s = Var(ROUTE_VAR)


def attachment(x: str) -> str:
    """Internal router an external neighbor peers with."""
    return INTERNAL[int(x[1:]) % len(INTERNAL)]


def _links() -> List[Edge]:
    links: List[Edge] = []
    for j, u in enumerate(INTERNAL):
        links.append((u, INTERNAL[(j + 1) % len(INTERNAL)]))
    links += list(CHORDS)
    links += [(attachment(x), x) for x in EXTERNAL]
    directed: List[Edge] = []
    for u, v in links:
        directed += [(u, v), (v, u)]
    return directed


def no_bte() -> Expr:
    return all_routes(s, lambda r: Not(SetContains(get(r, "comms"), BTE)))


def _import(x: str) -> Expr:
    """Customers (even ids) get ``lp = 200``; peers get ``lp = 100`` and every
    fourth neighbor's routes are marked BTE."""
    j = int(x[1:])

    def body(r: Expr) -> Expr:
        if j % 2 == 0:
            return Some(update(bump(r), lp=lit(bv_value(200, 32)), comms=SetInsert(get(r, "comms"), CUST)))
        comms = SetInsert(get(r, "comms"), PEER)
        if j % 4 == 1:
            comms = SetInsert(comms, BTE)
        return Some(update(bump(r), lp=lit(bv_value(100, 32)), comms=comms))

    return on_route(ROUTE, body)


def _export(x: str, filtered: bool) -> Expr:
    none = NoneOf(ROUTE.inner)

    def body(r: Expr) -> Expr:
        cleaned = Some(update(bump(r), comms=SetRemove(SetRemove(get(r, "comms"), CUST), PEER)))
        if not filtered:
            return cleaned
        return If(SetContains(get(r, "comms"), BTE), none, cleaned)

    return on_route(ROUTE, body)


def wan_network(broken: bool = False) -> NetworkInstance:
    edges = _links()
    forward = on_route(ROUTE, lambda r: Some(bump(r)))
    transfer: Dict[Edge, Expr] = {}
    for u, v in edges:
        if v in EXTERNAL:
            transfer[(u, v)] = _export(v, filtered=not (broken and v == BROKEN_NEIGHBOR))
        elif u in EXTERNAL:
            transfer[(u, v)] = _import(u)
        else:
            transfer[(u, v)] = forward
    symbolics: List[SymbolicVar] = []
    for v in INTERNAL + EXTERNAL:
        route = Var(f"{v}_route")
        assumption = all_routes(route, lambda r: Not(SetContains(get(r, "comms"), BTE))) if v in EXTERNAL else None
        symbolics.append(SymbolicVar(route.name, ROUTE, assumption))
    return NetworkInstance(
        topology=Topology(INTERNAL + EXTERNAL, tuple(edges)),
        route_sort=ROUTE,
        init={v: Var(f"{v}_route") for v in INTERNAL + EXTERNAL},
        transfer=transfer,
        merge=lexicographic_merge(ROUTE, [("lp", MAX), ("len", MIN)], [BTE, CUST, PEER]),
        symbolics=tuple(symbolics),
        name="wan-bte" + ("-broken" if broken else ""),
    )


def bte_properties() -> Annotation:
    by_node: Dict[str, Globally] = {v: globally() for v in INTERNAL}
    by_node.update({x: Globally(no_bte()) for x in EXTERNAL})
    return Annotation(by_node)


def build_wan_bte(broken: bool = False) -> BenchmarkFixture:
    """No external neighbor ever holds a BTE-tagged route.

    ``broken`` leaves the export towards ``x3`` unfiltered.
    """
    properties = bte_properties()
    failures: Tuple[ExpectedFailure, ...] = ()
    if broken:
        failures = (ExpectedFailure(BROKEN_NEIGHBOR, "inductive", 1),)
    return BenchmarkFixture(
        name="wan-bte" + ("-broken" if broken else ""),
        network=wan_network(broken),
        interfaces=properties,
        properties=properties,
        expected=FAIL if broken else PASS,
        expected_failures=failures,
        notes="the interface is the property",
    )
