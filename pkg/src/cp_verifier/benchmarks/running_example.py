"""The five-node cloud network used throughout the examples.

External neighbor ``n`` and WAN router ``w`` both feed ``v``; ``v`` and
``d`` exchange routes; ``d`` feeds the data center ``e``. Edge ``nv``
drops everything, ``wv`` sets ``lp = 100`` and tags routes internal, and
``de`` drops untagged routes. The broken-filter variant forwards ``nv``
unchanged, so an announcement from ``n`` with a higher ``lp`` wins at ``v``.
"""

from typing import Dict, List

from cp_verifier.benchmarks.fixtures import FAIL, PASS, BenchmarkFixture, ExpectedFailure
from cp_verifier.benchmarks.policies import MAX, MIN, bump, lexicographic_merge, on_route, update
from cp_verifier.model.expr import (
    And,
    Eq,
    Expr,
    If,
    NoneOf,
    Not,
    Or,
    Some,
    Var,
    all_routes,
    get,
    has_route,
    is_none,
    is_some,
    lit,
)
from cp_verifier.model.network import ROUTE_VAR, NetworkInstance, SymbolicVar, Topology
from cp_verifier.model.sorts import BOOL, INT, BitVecSort, OptionSort, record_sort
from cp_verifier.model.values import FALSE, TRUE, Value, bv_value, int_value, record_value, some_value
from cp_verifier.temporal.lowering import globally
from cp_verifier.temporal.ops import AndOp, Annotation, Finally, Globally, TemporalOp, Until

NODES = ("n", "w", "v", "d", "e")
EDGES = (("n", "v"), ("w", "v"), ("v", "d"), ("d", "v"), ("d", "e"))
LP = BitVecSort(32)

s = Var(ROUTE_VAR)


def route_sort(ghost: bool = False) -> OptionSort:
    fields = {"lp": LP, "len": INT, "tag": BOOL}
    if ghost:
        fields["fromw"] = BOOL
    return OptionSort(record_sort(**fields))


def w_route(ghost: bool = False) -> Value:
    fields = {"lp": bv_value(100, 32), "len": int_value(0), "tag": FALSE}
    if ghost:
        fields["fromw"] = TRUE
    sort = route_sort(ghost)
    return some_value(record_value(sort.inner, fields))


def running_network(symbolic_n: bool = False, ghost: bool = False, broken_filter: bool = False) -> NetworkInstance:
    """Build the network; ``symbolic_n`` leaves ``n``'s announcement open."""
    sort = route_sort(ghost)
    none = NoneOf(sort.inner)
    init: Dict[str, Expr] = {v: none for v in NODES}
    init["w"] = lit(w_route(ghost))
    symbolics = ()
    if symbolic_n:
        init["n"] = Var("n_route")
        assumption = all_routes(Var("n_route"), lambda r: Not(get(r, "fromw"))) if ghost else None
        symbolics = (SymbolicVar("n_route", sort, assumption),)
    forward = on_route(sort, lambda r: Some(bump(r)))
    transfer = {
        ("n", "v"): Var(ROUTE_VAR) if broken_filter else none,
        ("w", "v"): on_route(sort, lambda r: Some(update(bump(r), lp=lit(bv_value(100, 32)), tag=lit(TRUE)))),
        ("v", "d"): forward,
        ("d", "v"): forward,
        ("d", "e"): on_route(sort, lambda r: If(get(r, "tag"), Some(bump(r)), none)),
    }
    name = "running-example" + ("-ghost" if ghost else "") + ("-broken" if broken_filter else "")
    return NetworkInstance(
        topology=Topology(NODES, EDGES),
        route_sort=sort,
        init=init,
        transfer=transfer,
        merge=lexicographic_merge(sort, [("lp", MAX), ("len", MIN)]),
        symbolics=symbolics,
        name=name,
    )


def _lp(r: Expr, value: int) -> Expr:
    return Eq(get(r, "lp"), lit(bv_value(value, 32)))


def tagged() -> Expr:
    return has_route(s, lambda r: get(r, "tag"))


def empty_or_tagged() -> Expr:
    return all_routes(s, lambda r: get(r, "tag"))


def blocked() -> Expr:
    """Routes with ``lp = 200`` that are not tagged internal."""
    return has_route(s, lambda r: And((_lp(r, 200), Not(get(r, "tag")))))


def _annotation(**ops: TemporalOp) -> Annotation:
    return Annotation({v: ops.get(v, globally()) for v in NODES})


def weak_interfaces() -> Annotation:
    return _annotation(
        w=Globally(has_route(s, lambda r: _lp(r, 100))),
        v=Globally(empty_or_tagged()),
        d=Globally(empty_or_tagged()),
        e=Globally(empty_or_tagged()),
    )


def reach_interfaces() -> Annotation:
    return _annotation(
        w=Globally(has_route(s, lambda r: _lp(r, 100))),
        v=Until(is_none(s), 1, Globally(tagged())),
        d=Until(is_none(s), 2, Globally(tagged())),
        e=Finally(3, Globally(is_some(s))),
    )


def reach_properties(witness: int = 3) -> Annotation:
    return _annotation(e=Finally(witness, Globally(is_some(s))))


def bad_interfaces() -> Annotation:
    return _annotation(
        w=Globally(has_route(s, lambda r: _lp(r, 100))),
        v=Globally(blocked()),
        d=Globally(blocked()),
        e=Globally(is_none(s)),
    )


def patched_interfaces() -> Annotation:
    return _annotation(
        w=Globally(Eq(s, lit(w_route()))),
        v=Globally(Or((blocked(), is_none(s)))),
        d=Globally(Or((blocked(), is_none(s)))),
        e=Globally(is_none(s)),
    )


def ghost_interfaces() -> Annotation:
    def fromw(r: Expr) -> Expr:
        return get(r, "fromw")

    return _annotation(
        n=Globally(all_routes(s, lambda r: Not(fromw(r)))),
        w=Globally(has_route(s, lambda r: And((_lp(r, 100), fromw(r))))),
        v=Until(is_none(s), 1, Globally(has_route(s, lambda r: And((get(r, "tag"), fromw(r)))))),
        d=Until(is_none(s), 2, Globally(has_route(s, lambda r: And((get(r, "tag"), fromw(r)))))),
        e=Finally(3, Globally(has_route(s, fromw))),
    )


def ghost_properties() -> Annotation:
    return _annotation(e=Finally(3, Globally(has_route(s, lambda r: get(r, "fromw")))))


def no_hijack_interfaces() -> Annotation:
    """No router behind the filter ever selects an untagged ``lp = 200`` route."""
    safe = Globally(Not(blocked()))
    return _annotation(v=safe, d=safe, e=safe)


def padded_interfaces() -> Annotation:
    """Reachability interfaces with witness times loosened for one step of delay."""
    return _annotation(
        w=Globally(has_route(s, lambda r: _lp(r, 100))),
        v=Until(is_none(s), 1, Globally(tagged())),
        d=AndOp(Until(is_none(s), 2, Globally(empty_or_tagged())), Finally(3, Globally(tagged()))),
        e=Finally(5, Globally(is_some(s))),
    )


def running_example_fixtures() -> List[BenchmarkFixture]:
    closed = running_network()
    open_n = running_network(symbolic_n=True)
    ghost = running_network(symbolic_n=True, ghost=True)
    bad = bad_interfaces()
    return [
        BenchmarkFixture(
            name="base", network=closed, interfaces=reach_interfaces(), properties=reach_properties(),
            notes="closed network; e is reached at t=3",
        ),
        BenchmarkFixture(
            name="weak-tag", network=open_n, interfaces=weak_interfaces(),
            properties=_annotation(e=Globally(empty_or_tagged())), expected_strawperson=PASS,
            notes="if e has a route, it is tagged",
        ),
        BenchmarkFixture(
            name="reach", network=open_n, interfaces=reach_interfaces(), properties=reach_properties(),
            notes="e can reach w from time 3 on",
        ),
        BenchmarkFixture(
            name="strawperson-bad", network=closed, interfaces=bad, properties=bad, expected=FAIL,
            expected_failures=(ExpectedFailure("v", "initial", 0), ExpectedFailure("d", "initial", 0)),
            expected_strawperson=PASS,
            notes="time-free check passes every node yet e ends with a tagged route",
        ),
        BenchmarkFixture(
            name="temporal-bad", network=open_n, interfaces=bad, properties=bad, expected=FAIL,
            expected_failures=(ExpectedFailure("v", "initial", 0), ExpectedFailure("d", "initial", 0)),
            expected_strawperson=PASS,
            notes="the interfaces leave out the initial route at v and d",
        ),
        BenchmarkFixture(
            name="temporal-patched", network=open_n, interfaces=patched_interfaces(),
            properties=patched_interfaces(), expected=FAIL,
            expected_failures=(ExpectedFailure("v", "inductive", 1),),
            notes="v's interface misses the route <100,1,true> at t=1",
        ),
        BenchmarkFixture(
            name="ghost-fromw", network=ghost, interfaces=ghost_interfaces(), properties=ghost_properties(),
            notes="e eventually holds a route that came from w",
        ),
        BenchmarkFixture(
            name="reach-delay1", network=open_n, interfaces=reach_interfaces(), properties=reach_properties(),
            expected=FAIL, delay=1,
            expected_failures=(ExpectedFailure("d", "inductive", 2), ExpectedFailure("e", "inductive", 3)),
            notes="exact witness times are too tight under one step of delay",
        ),
        BenchmarkFixture(
            name="reach-delay1-padded", network=open_n, interfaces=padded_interfaces(),
            properties=reach_properties(5), delay=1,
            notes="witness times padded for one step of delay",
        ),
        BenchmarkFixture(
            name="broken-filter", network=running_network(symbolic_n=True, broken_filter=True),
            interfaces=no_hijack_interfaces(), properties=no_hijack_interfaces(), expected=FAIL,
            expected_failures=(ExpectedFailure("v", "inductive", 1),),
            notes="nv forwards n's announcement, which beats w's route at v",
        ),
    ]


def running_example_fixture(name: str) -> BenchmarkFixture:
    for fixture in running_example_fixtures():
        if fixture.name == name:
            return fixture
    names = [f.name for f in running_example_fixtures()]
    raise KeyError(f"unknown running-example fixture {name!r}; choose from {names}")
