import json

import pytest

from cp_verifier.benchmarks import (
    BENCHMARK_NAMES,
    FAIL,
    PASS,
    Role,
    bfs_distances,
    build_fixture,
    build_hijack,
    build_length,
    build_reach,
    build_vf,
    build_wan_bte,
    distance,
    dump_fixture,
    fattree,
    fixture_names,
    random_hop_network,
    reachability_interface,
    running_example_fixtures,
)
from cp_verifier.benchmarks.datacenter import HIJACKER
from cp_verifier.benchmarks.running_example import no_hijack_interfaces, route_sort, running_network
from cp_verifier.benchmarks.wan import BROKEN_NEIGHBOR, EXTERNAL, INTERNAL, attachment
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.expr import Var
from cp_verifier.model.laws import check_merge_laws
from cp_verifier.model.network import ROUTE_VAR, close_network, validate_network
from cp_verifier.model.serialization import load_network
from cp_verifier.model.values import FALSE, bv_value, int_value, record_value, some_value
from cp_verifier.simulator import simulate
from cp_verifier.temporal.lowering import apply_at, check_annotation
from cp_verifier.temporal.serialization import load_annotation


def satisfied_on_trace(annotation, trace, extra_steps=3):
    """Whether every node's route fits its annotation at every recorded time."""
    for v in trace.nodes:
        for t in range(trace.horizon + extra_steps):
            if not eval_expr(apply_at(annotation[v], t), {ROUTE_VAR: trace.state(v, t)}).data:
                return False
    return True


class TestFattree:
    @pytest.mark.parametrize("k,nodes,edges", [(2, 5, 8), (4, 20, 64), (8, 80, 512)])
    def test_sizes(self, k, nodes, edges):
        layout = fattree(k)
        assert len(layout.nodes) == nodes
        assert len(layout.topology.edges) == edges

    def test_roles_k4(self):
        layout = fattree(4)
        assert layout.with_role(Role.CORE) == ["c0", "c1", "c2", "c3"]
        assert layout.edge_nodes[:2] == ["e6", "e7"]
        assert layout.roles["a4"] == Role.AGGREGATION

    @pytest.mark.parametrize("k", [2, 4, 6])
    def test_distance_is_shortest_path(self, k):
        layout = fattree(k)
        for dest in layout.edge_nodes:
            bfs = bfs_distances(layout, dest)
            assert {v: distance(layout, dest, v) for v in layout.nodes} == bfs

    def test_odd_arity_rejected(self):
        with pytest.raises(ValueError):
            fattree(3)

    def test_distance_needs_edge_destination(self):
        with pytest.raises(ValueError):
            distance(fattree(4), "c0", "e6")


ALL_BUILT = [
    ("reach", lambda: build_reach(4)),
    ("reach-all", lambda: build_reach(4, all_prefix=True)),
    ("reach-early", lambda: build_reach(4, early="c0")),
    ("length", lambda: build_length(4)),
    ("length-weak", lambda: build_length(4, property_bound=3)),
    ("length-nolp", lambda: build_length(4, with_lp=False)),
    ("length-all", lambda: build_length(4, all_prefix=True)),
    ("vf", lambda: build_vf(4)),
    ("vf-nolen", lambda: build_vf(4, with_len=False)),
    ("vf-all", lambda: build_vf(4, all_prefix=True)),
    ("hijack", lambda: build_hijack(4)),
    ("hijack-all", lambda: build_hijack(4, all_prefix=True)),
    ("hijack-unfiltered", lambda: build_hijack(4, filtered=False)),
    ("wan", lambda: build_wan_bte()),
    ("wan-broken", lambda: build_wan_bte(broken=True)),
]


@pytest.mark.parametrize("label,build", ALL_BUILT, ids=[label for label, _ in ALL_BUILT])
def test_benchmarks_are_well_formed(label, build):
    fixture = build()
    n = fixture.network
    assert validate_network(n) == []
    assert check_annotation(fixture.interfaces, n, "interfaces") == []
    assert check_annotation(fixture.properties, n, "properties") == []


@pytest.mark.parametrize("fixture", running_example_fixtures(), ids=lambda f: f.name)
def test_running_example_fixtures_are_well_formed(fixture):
    assert validate_network(fixture.network) == []
    assert check_annotation(fixture.interfaces, fixture.network) == []
    assert check_annotation(fixture.properties, fixture.network) == []


class TestDatacenter:
    def test_symbolic_destination(self):
        fixture = build_reach(4, all_prefix=True)
        assert [sym.name for sym in fixture.network.symbolics] == ["dest"]
        assert fixture.name == "all-reach-k4"

    def test_hijacker_is_added(self):
        n = build_hijack(4).network
        assert n.nodes[-1] == HIJACKER
        assert n.preds(HIJACKER) == ("c0", "c1", "c2", "c3")
        assert {sym.name for sym in n.symbolics} == {"p", "h_route"}

    def test_early_witness_expectations(self):
        assert build_reach(4, early="a4").expected_failures[0].condition == "initial"
        failure = build_reach(4, early="c0").expected_failures[0]
        assert (failure.node, failure.condition, failure.time) == ("c0", "inductive", 1)
        with pytest.raises(ValueError):
            build_reach(4, early="e6")

    def test_destination_must_be_edge_node(self):
        with pytest.raises(ValueError):
            build_reach(4, dest="a4")

    @pytest.mark.parametrize("build", [build_reach, build_length, build_vf])
    def test_interfaces_hold_on_the_simulation(self, build):
        fixture = build(4)
        trace = simulate(fixture.network)
        assert trace.converged_at == 4
        assert satisfied_on_trace(fixture.interfaces, trace)
        assert satisfied_on_trace(fixture.properties, trace)

    def test_weakened_length_property_fails_on_the_simulation(self):
        fixture = build_length(4, property_bound=3)
        assert not satisfied_on_trace(fixture.properties, simulate(fixture.network))

    def test_merge_laws(self):
        for fixture in (build_vf(4), build_hijack(4)):
            assert check_merge_laws(fixture.network, samples=300, seed=1).ok


class TestWan:
    def test_shape(self):
        n = build_wan_bte().network
        assert len(n.nodes) == 30
        assert len(n.symbolics) == 30
        assert attachment("x13") == "i3"
        assert n.preds(BROKEN_NEIGHBOR) == ("i3",)

    def test_only_externals_have_assumptions(self):
        n = build_wan_bte().network
        assumed = {sym.name for sym in n.symbolics if sym.assumption is not None}
        assert assumed == {f"{x}_route" for x in EXTERNAL}
        assert all(f"{v}_route" not in assumed for v in INTERNAL)

    def test_broken_variant(self):
        fixture = build_wan_bte(broken=True)
        assert fixture.expected == FAIL
        assert fixture.expected_failures[0].node == BROKEN_NEIGHBOR


class TestFixtureLookup:
    def test_every_name_builds(self):
        for name in BENCHMARK_NAMES:
            assert build_fixture(name, k=2).network.nodes

    def test_running_example_ids(self):
        names = fixture_names("running-example")
        assert "temporal-bad" in names
        assert build_fixture("running-example", fixture="ghost-fromw").name == "ghost-fromw"
        with pytest.raises(KeyError):
            build_fixture("running-example", fixture="nope")

    def test_unknown_benchmark(self):
        with pytest.raises(KeyError):
            build_fixture("bgp-everywhere")

    def test_dump_reloads(self, tmp_path):
        fixture = build_fixture("running-example", fixture="reach")
        paths = dump_fixture(fixture, tmp_path / "reach")
        assert load_network(paths["network"]) == fixture.network
        assert load_annotation(paths["interfaces"]) == fixture.interfaces
        assert set(json.loads((tmp_path / "reach" / "properties.json").read_text())) == set(fixture.network.nodes)


def hijack_route():
    fields = {"lp": bv_value(200, 32), "len": int_value(0), "tag": FALSE}
    return some_value(record_value(route_sort().inner, fields))


class TestBrokenFilter:
    def test_v_selects_the_external_route(self):
        closed = close_network(running_network(symbolic_n=True, broken_filter=True), {"n_route": hijack_route()})
        trace = simulate(closed)
        assert trace.converged_at is not None
        assert trace.state("v", trace.horizon) == hijack_route()
        assert not satisfied_on_trace(no_hijack_interfaces(), trace)

    def test_working_filter_keeps_the_property(self):
        closed = close_network(running_network(symbolic_n=True), {"n_route": hijack_route()})
        assert satisfied_on_trace(no_hijack_interfaces(), simulate(closed))

    def test_fixture(self):
        fixture = build_fixture("running-example", fixture="broken-filter")
        assert fixture.expected == FAIL
        assert fixture.network.name == "running-example-broken"
        assert fixture.network.transfer[("n", "v")] == Var(ROUTE_VAR)


class TestRandomCorpus:
    @pytest.mark.parametrize("seed", range(30))
    def test_networks_are_closed_and_valid(self, seed):
        n = random_hop_network(seed)
        assert 2 <= len(n.nodes) <= 6
        assert n.is_closed()
        assert validate_network(n) == []
        assert eval_expr(n.init["r0"], {}).data is not None

    def test_seeds_are_reproducible(self):
        assert random_hop_network(11) == random_hop_network(11)

    @pytest.mark.parametrize("seed", range(30))
    def test_reachability_interface_holds_on_the_trace(self, seed):
        n = random_hop_network(seed)
        trace = simulate(n, max_steps=50)
        assert trace.converged_at is not None
        assert satisfied_on_trace(reachability_interface(n, trace), trace)


def test_expected_outcomes_are_known():
    for fixture in running_example_fixtures():
        assert fixture.expected in (PASS, FAIL)
        if fixture.expected == FAIL:
            assert fixture.expected_failures
