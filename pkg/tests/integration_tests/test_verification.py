"""End-to-end checks against a real SMT solver."""

import json
import random

import pytest

from cp_verifier.benchmarks import (
    FAIL,
    PASS,
    build_hijack,
    build_length,
    build_reach,
    build_vf,
    build_wan_bte,
    has_filters,
    random_hop_network,
    reachability_interface,
    running_example_fixture,
    running_example_fixtures,
)
from cp_verifier.benchmarks.running_example import route_sort, w_route
from cp_verifier.benchmarks.wan import BROKEN_NEIGHBOR
from cp_verifier.checker import check_modular, check_strawperson, replay_counterexample, vc_inductive, vc_initial
from cp_verifier.checker.modular import solve
from cp_verifier.checker.schemas import ConditionKind, ConditionStatus
from cp_verifier.cli import main
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.expr import And, Eq, Var, lit, substitute
from cp_verifier.model.network import ROUTE_VAR, close_network
from cp_verifier.model.sampling import ExprGenerator, sample_value
from cp_verifier.model.sorts import BOOL, INT, STRING_SET, BitVecSort, OptionSort, record_sort
from cp_verifier.model.values import FALSE, bv_value, int_value, none_value, record_value, some_value
from cp_verifier.monolithic import check_monolithic, monolithic_report, stable_condition
from cp_verifier.simulator import delayed_simulate, simulate, singleton_interface
from cp_verifier.smt.encoder import Alphabet, SmtEncoder
from cp_verifier.smt.factory import create_solver_client
from cp_verifier.temporal.lowering import apply_at

pytestmark = pytest.mark.solver


def assert_outcome(fixture, report):
    assert report.overall.value == fixture.expected, report.failing_nodes()
    for expected in fixture.expected_failures:
        result = report.verdict(expected.node).condition(ConditionKind(expected.condition))
        assert result.status == ConditionStatus.COUNTEREXAMPLE
        if expected.time is not None:
            assert result.counterexample.time == expected.time


def holds_on_trace(annotation, trace, extra_steps=2):
    return all(
        eval_expr(apply_at(annotation[v], t), {ROUTE_VAR: trace.state(v, t)}).data
        for v in trace.nodes
        for t in range(trace.horizon + extra_steps)
    )


@pytest.mark.parametrize("fixture", running_example_fixtures(), ids=lambda f: f.name)
def test_running_example(fixture, client):
    report = check_modular(fixture.network, fixture.interfaces, fixture.properties, client, delay=fixture.delay)
    assert_outcome(fixture, report)
    assert report.exit_status == (0 if fixture.expected == PASS else 1)


@pytest.mark.parametrize(
    "fixture",
    [f for f in running_example_fixtures() if f.expected_strawperson == PASS],
    ids=lambda f: f.name,
)
def test_time_free_check_passes(fixture, client):
    report = check_strawperson(fixture.network, fixture.interfaces, client)
    assert report.passed
    assert report.unsound


@pytest.mark.parametrize(
    "fixture",
    [f for f in running_example_fixtures() if f.expected == FAIL],
    ids=lambda f: f.name,
)
def test_counterexample_models_falsify_the_condition(fixture, client):
    n, A = fixture.network, fixture.interfaces
    for expected in fixture.expected_failures:
        if expected.condition == "initial":
            vc = vc_initial(n, A, expected.node)
        else:
            vc = vc_inductive(n, A, expected.node, fixture.delay)
        verdict = solve(vc, client)
        assert verdict.is_counterexample
        replay = replay_counterexample(vc, verdict.assignment)
        assert replay.genuine
        assert not replay.conclusion_holds


def test_padding_is_needed_under_delay(client):
    fixture = running_example_fixture("reach-delay1-padded")
    assert check_modular(fixture.network, fixture.interfaces, fixture.properties, client, delay=1).passed
    assert not check_modular(fixture.network, fixture.interfaces, fixture.properties, client, delay=3).passed


def test_delayed_runs_satisfy_padded_interfaces(client):
    fixture = running_example_fixture("reach-delay1-padded")
    assert check_modular(fixture.network, fixture.interfaces, fixture.properties, client, delay=1).passed
    inner = route_sort().inner
    announcements = [
        none_value(inner),
        w_route(),
        some_value(record_value(inner, {"lp": bv_value(200, 32), "len": int_value(0), "tag": FALSE})),
    ]
    for announcement in announcements:
        closed = close_network(fixture.network, {"n_route": announcement})
        for seed in range(70):
            trace = delayed_simulate(closed, 1, seed=seed)
            assert trace.converged_at is not None
            assert holds_on_trace(fixture.interfaces, trace), (announcement, seed)
            assert holds_on_trace(fixture.properties, trace), (announcement, seed)


DATACENTER = [
    build_reach(4),
    build_reach(4, all_prefix=True),
    build_reach(4, early="a4"),
    build_reach(4, early="c0"),
    build_length(4),
    build_length(4, property_bound=3),
    build_length(4, with_lp=False),
    build_vf(4),
    build_vf(4, with_len=False),
    build_hijack(4),
    build_hijack(4, all_prefix=True),
    build_hijack(4, filtered=False),
]


@pytest.mark.parametrize("fixture", DATACENTER, ids=lambda f: f.name)
def test_datacenter(fixture, client):
    report = check_modular(fixture.network, fixture.interfaces, fixture.properties, client, jobs=4)
    assert_outcome(fixture, report)


@pytest.mark.parametrize("broken", [False, True])
def test_wan(broken, client):
    fixture = build_wan_bte(broken=broken)
    report = check_modular(fixture.network, fixture.interfaces, fixture.properties, client, jobs=4)
    assert_outcome(fixture, report)
    if broken:
        assert report.failing_nodes() == [BROKEN_NEIGHBOR]


@pytest.mark.parametrize("seed", range(50))
def test_modular_pass_holds_on_the_simulation(seed, client):
    n = random_hop_network(seed)
    trace = simulate(n, max_steps=50)
    interfaces = reachability_interface(n, trace)
    report = check_modular(n, interfaces, interfaces, client)
    if not has_filters(n):
        assert report.passed
    if report.passed:
        assert holds_on_trace(interfaces, trace)


@pytest.mark.parametrize("seed", range(50))
def test_singleton_interfaces_are_inductive(seed, client):
    n = random_hop_network(seed)
    trace = simulate(n, max_steps=50)
    interfaces = singleton_interface(trace)
    report = check_modular(n, interfaces, interfaces, client)
    for verdict in report.per_node:
        assert verdict.condition(ConditionKind.INITIAL).status == ConditionStatus.VALID, verdict.node
        assert verdict.condition(ConditionKind.INDUCTIVE).status == ConditionStatus.VALID, verdict.node
    assert holds_on_trace(interfaces, trace)


@pytest.mark.parametrize("name", ["base", "reach", "ghost-fromw"])
def test_monolithic_agrees_with_modular_pass(name, client):
    fixture = running_example_fixture(name)
    assert check_modular(fixture.network, fixture.interfaces, fixture.properties, client).passed
    report = monolithic_report(fixture.network, fixture.properties, client)
    assert report.per_node[0].node == "network"
    assert report.per_node[0].condition(ConditionKind.STABLE).status == ConditionStatus.VALID


def test_monolithic_never_refutes_a_modular_pass(client):
    fixture = build_reach(4)
    stable = monolithic_report(fixture.network, fixture.properties, client).per_node[0].condition(ConditionKind.STABLE)
    if stable.status == ConditionStatus.UNKNOWN:
        pytest.skip(f"stable-state query inconclusive: {stable.reason}")
    assert stable.status == ConditionStatus.VALID


def test_monolithic_finds_the_broken_filter(client):
    fixture = running_example_fixture("broken-filter")
    report = monolithic_report(fixture.network, fixture.properties, client)
    stable = report.per_node[0].condition(ConditionKind.STABLE)
    assert stable.status == ConditionStatus.COUNTEREXAMPLE
    routes = stable.counterexample.routes
    assert routes["v"] == routes["n"]
    assert routes["v"].startswith("⟨200,")

    verdict = check_monolithic(fixture.network, fixture.properties, client)
    assert replay_counterexample(stable_condition(fixture.network, fixture.properties), verdict.assignment).genuine


BV8 = BitVecSort(8)
SMALL_ROUTE = OptionSort(record_sort(lp=BV8, len=INT, tag=BOOL))
ALPHABET = ("a", "b", "c")
SORT_FAMILIES = {
    "bool": ({"b": BOOL, "c": BOOL, "x": INT}, BOOL),
    "int": ({"x": INT, "y": INT, "b": BOOL}, INT),
    "bitvec": ({"x": BV8, "y": BV8, "b": BOOL}, BV8),
    "option": ({"s": SMALL_ROUTE, "r": SMALL_ROUTE.inner, "b": BOOL}, SMALL_ROUTE),
    "set": ({"S": STRING_SET, "T": STRING_SET, "b": BOOL}, STRING_SET),
}
PAIRS = 1000
BATCH = 100


def solver_agrees(client, cases, label):
    """Whether the solver evaluates every expression to the evaluator's value.

    Each case gets its own copy of the variables, pinned to its environment.
    """
    enc = SmtEncoder(Alphabet.of(ALPHABET))
    terms = {}
    goals = []
    for i, (expr, values, expected) in enumerate(cases):
        renaming = {}
        for name, value in values.items():
            pinned = f"{name}.{i}"
            terms[pinned] = enc.declare(pinned, value.sort)
            enc.assume(enc.encode_expr(Eq(Var(pinned), lit(value)), terms))
            renaming[name] = Var(pinned)
        goals.append(Eq(substitute(expr, renaming), lit(expected)))
    return client.check_validity(enc, enc.encode_expr(And(tuple(goals)), terms), label).is_valid


@pytest.mark.parametrize("family", list(SORT_FAMILIES))
def test_solver_agrees_with_the_evaluator(family, client):
    env, sort = SORT_FAMILIES[family]
    rng = random.Random(sorted(SORT_FAMILIES).index(family))
    gen = ExprGenerator(env, rng, ALPHABET)
    cases = []
    for _ in range(PAIRS):
        expr = gen.expr(sort, depth=3)
        values = {name: sample_value(s, rng, ALPHABET) for name, s in env.items()}
        cases.append((expr, values, eval_expr(expr, values)))
    for start in range(0, PAIRS, BATCH):
        batch = cases[start:start + BATCH]
        assert solver_agrees(client, batch, f"differential.{family}.{start}"), [
            case for case in batch if not solver_agrees(client, [case], f"differential.{family}.single")
        ]


class TestCommandLine:
    def test_passing_bench(self, capsys):
        assert main(["bench", "--name", "running-example", "--fixture", "reach"]) == 0
        assert "overall: PASS" in capsys.readouterr().out

    def test_counterexample_bench(self, capsys):
        status = main(["bench", "--name", "running-example", "--fixture", "temporal-patched", "--report", "json"])
        assert status == 1
        doc = json.loads(capsys.readouterr().out)
        v = next(node for node in doc["report"]["per_node"] if node["node"] == "v")
        assert v["conditions"][1]["counterexample"]["time"] == 1
        assert v["conditions"][2]["status"] == "skipped"

    def test_time_free_bench_is_flagged(self, capsys):
        assert main(["bench", "--name", "running-example", "--fixture", "strawperson-bad", "--mode", "strawperson"]) == 0
        assert "UNSOUND" in capsys.readouterr().out

    def test_broken_filter_bench_fails_monolithic(self, capsys):
        status = main(["bench", "--name", "running-example", "--fixture", "broken-filter", "--mode", "monolithic"])
        assert status == 1
        assert "overall: FAIL" in capsys.readouterr().out

    def test_dumped_scripts(self, tmp_path):
        status = main(["bench", "--name", "running-example", "--fixture", "base", "--dump-smt", str(tmp_path)])
        assert status == 0
        assert (tmp_path / "e.inductive.smt2").exists()


@pytest.mark.slow
@pytest.mark.parametrize("build", [build_reach, build_length, build_vf, build_hijack], ids=lambda b: b.__name__)
def test_datacenter_k8(build, client):
    fixture = build(8)
    report = check_modular(fixture.network, fixture.interfaces, fixture.properties, client, jobs=8)
    assert report.passed, report.failing_nodes()
    assert len(report.per_node) == len(fixture.network.nodes)


MONOLITHIC_BUDGET = 600.0


@pytest.mark.slow
def test_length_scaling_trend(client):
    small, large = build_length(4), build_length(12)
    modular_small = check_modular(small.network, small.interfaces, small.properties, client, jobs=8)
    modular_large = check_modular(large.network, large.interfaces, large.properties, client, jobs=8)
    assert modular_small.passed and modular_large.passed
    assert modular_large.median_node_time < 3 * modular_small.median_node_time

    budget_client = create_solver_client(timeout=MONOLITHIC_BUDGET)
    mono_large = monolithic_report(large.network, large.properties, budget_client)
    stable = mono_large.per_node[0].condition(ConditionKind.STABLE)
    if stable.status == ConditionStatus.UNKNOWN:
        assert "timeout" in (stable.reason or "") or "canceled" in (stable.reason or "")
        return
    assert stable.status == ConditionStatus.VALID
    if mono_large.total_wall >= MONOLITHIC_BUDGET:
        return
    mono_small = monolithic_report(small.network, small.properties, budget_client)
    assert mono_large.total_wall >= 10 * mono_small.total_wall
