from typing import List

import pytest

from cp_verifier.benchmarks import running_example_fixture
from cp_verifier.benchmarks.running_example import route_sort, w_route
from cp_verifier.checker import check_modular
from cp_verifier.checker.modular import check_condition, check_node, minimize_time, solve, to_counterexample
from cp_verifier.checker.replay import replay_counterexample
from cp_verifier.checker.schemas import CheckReport, ConditionKind, ConditionResult, ConditionStatus, NodeVerdict, Outcome, percentile
from cp_verifier.checker.strawperson import check_strawperson
from cp_verifier.checker.vcs import TIME, in_var, vc_inductive, vc_initial, vc_safety, vc_strawperson
from cp_verifier.model.errors import MalformedModel, NonGloballyInterface
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.expr import Or, Var, substitute
from cp_verifier.model.network import ROUTE_VAR
from cp_verifier.model.values import TRUE, bv_value, int_value, none_value, record_value, some_value
from cp_verifier.monolithic.stable import stable_condition, stable_var
from cp_verifier.simulator import simulate
from cp_verifier.smt.schemas import SolverVerdict, VerdictKind
from cp_verifier.temporal.lowering import apply_at, lower_at


class ScriptedClient:
    """Hands out canned verdicts in order and records query labels."""

    def __init__(self, verdicts: List[SolverVerdict], default: VerdictKind = VerdictKind.VALID):
        self.verdicts = list(verdicts)
        self.default = default
        self.labels: List[str] = []

    def check_validity(self, encoder, goal, label="query"):
        self.labels.append(label)
        if self.verdicts:
            return self.verdicts.pop(0)
        return SolverVerdict(kind=self.default, label=label)


def cx(assignment):
    return SolverVerdict(kind=VerdictKind.COUNTEREXAMPLE, assignment=assignment)


@pytest.fixture
def patched():
    return running_example_fixture("temporal-patched")


def v_counterexample(t=0):
    """A genuine model against v's inductive condition under the patched interfaces."""
    empty = none_value(w_route().sort.inner)
    return {TIME: int_value(t), in_var("d"): empty, in_var("n"): empty, in_var("w"): w_route()}


class TestConditions:
    def test_fold_definitions_follow_sorted_predecessors(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        names = [name for name, _ in vc.definitions]
        assert names == [
            "cpv.init.v",
            "cpv.tr.d.v", "cpv.merge.v.0",
            "cpv.tr.n.v", "cpv.merge.v.1",
            "cpv.tr.w.v", "cpv.merge.v.2",
        ]
        assert vc.result == "cpv.merge.v.2"
        assert [name for name, _ in vc.variables] == [TIME, "cpv.in.d", "cpv.in.n", "cpv.in.w"]

    def test_zero_delay_hypothesis_is_the_interface_at_t(self, patched):
        A = patched.interfaces
        vc = vc_inductive(patched.network, A, "v", delay=0)
        expected = substitute(lower_at(A["d"], Var(TIME)), {ROUTE_VAR: Var(in_var("d"))})
        assert vc.hypotheses[0] == expected

    def test_delay_widens_the_hypothesis_window(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v", delay=2)
        assert all(isinstance(h, Or) and len(h.args) == 3 for h in vc.hypotheses)
        with pytest.raises(ValueError):
            vc_inductive(patched.network, patched.interfaces, "v", delay=-1)

    def test_delay_window_looks_back_and_stops_at_zero(self):
        reach = running_example_fixture("reach")
        A = reach.interfaces
        window = vc_inductive(reach.network, A, "e", delay=2).hypotheses[0]
        fields = {"lp": bv_value(100, 32), "len": int_value(1), "tag": TRUE}
        tagged = some_value(record_value(route_sort().inner, fields))
        empty = none_value(route_sort().inner)

        def holds(t, route):
            return eval_expr(window, {TIME: int_value(t), in_var("d"): route}).data

        def fits(t, route):
            return eval_expr(apply_at(A["d"], t), {ROUTE_VAR: route}).data

        assert [holds(t, tagged) for t in range(4)] == [False, False, True, True]
        for t in range(6):
            for route in (tagged, empty):
                assert holds(t, route) == any(fits(max(t - k, 0), route) for k in range(3))
        assert holds(3, empty) and not fits(3, empty)

    def test_labels(self, patched):
        n, A = patched.network, patched.interfaces
        assert vc_initial(n, A, "e").label == "e.initial"
        assert vc_safety(n, A, patched.properties, "e").label == "e.safety"
        assert vc_strawperson(n, A, "e").label == "strawperson.e"
        assert not vc_initial(n, A, "e").timed
        assert vc_inductive(n, A, "e").timed

    def test_initial_condition_has_no_variables(self, patched):
        vc = vc_initial(patched.network, patched.interfaces, "w")
        assert vc.variables == ()
        assert vc.symbolics == ()

    def test_symbolic_inputs_are_referenced(self):
        fixture = running_example_fixture("ghost-fromw")
        vc = vc_initial(fixture.network, fixture.interfaces, "n")
        assert [sym.name for sym in vc.symbolics] == ["n_route"]


class TestReplay:
    def test_genuine_counterexample(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        replay = replay_counterexample(vc, v_counterexample())
        assert replay.genuine

    def test_missing_value(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        with pytest.raises(MalformedModel):
            replay_counterexample(vc, {TIME: int_value(0)})

    def test_rendered_counterexample(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        found = to_counterexample(vc, cx(v_counterexample()))
        assert found.time == 1
        assert found.routes == {"d": "∅", "n": "∅", "w": "⟨100,0,false⟩"}
        assert found.result == "⟨100,1,true⟩"

    def test_simulation_satisfies_passing_conditions(self):
        fixture = running_example_fixture("base")
        n, A = fixture.network, fixture.interfaces
        trace = simulate(n)
        for v in n.nodes:
            vc = vc_inductive(n, A, v)
            for t in range(trace.horizon + 2):
                assignment = {TIME: int_value(t), **{in_var(u): trace.state(u, t) for u in n.preds(v)}}
                replay = replay_counterexample(vc, assignment)
                assert replay.env[vc.result] == trace.state(v, t + 1)
                assert replay.hypotheses_hold and replay.conclusion_holds


class TestMinimization:
    def test_requeries_until_no_earlier_time(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        client = ScriptedClient([cx(v_counterexample(1))])
        first = cx(v_counterexample(3))
        verdict = minimize_time(vc, first, client)
        assert verdict.assignment[TIME].data == 1
        assert client.labels == ["v.inductive.min0", "v.inductive.min1"]

    def test_stops_at_zero(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        client = ScriptedClient([])
        verdict = minimize_time(vc, cx(v_counterexample(0)), client)
        assert verdict.assignment[TIME].data == 0
        assert client.labels == []

    def test_check_condition_reports_minimal_time(self, patched):
        vc = vc_inductive(patched.network, patched.interfaces, "v")
        client = ScriptedClient([cx(v_counterexample(2)), cx(v_counterexample(0))])
        result = check_condition(vc, client)
        assert result.status == ConditionStatus.COUNTEREXAMPLE
        assert result.counterexample.time == 1

    def test_unknown_keeps_reason(self, patched):
        vc = vc_initial(patched.network, patched.interfaces, "v")
        client = ScriptedClient([SolverVerdict(kind=VerdictKind.UNKNOWN, reason="timeout", timed_out=True)])
        result = check_condition(vc, client)
        assert result.status == ConditionStatus.UNKNOWN
        assert result.reason == "timeout"

    def test_solve_uses_condition_label(self, patched):
        client = ScriptedClient([])
        solve(vc_safety(patched.network, patched.interfaces, patched.properties, "d"), client)
        assert client.labels == ["d.safety"]


class TestNodeChecks:
    def test_later_conditions_are_skipped(self, patched):
        client = ScriptedClient([SolverVerdict(kind=VerdictKind.VALID), cx(v_counterexample(0))])
        verdict = check_node(patched.network, patched.interfaces, patched.properties, "v", client)
        statuses = [c.status for c in verdict.conditions]
        assert statuses == [ConditionStatus.VALID, ConditionStatus.COUNTEREXAMPLE, ConditionStatus.SKIPPED]
        assert not verdict.passed

    def test_modular_report_lists_nodes_in_order(self, patched):
        report = check_modular(patched.network, patched.interfaces, patched.properties, ScriptedClient([]), jobs=2)
        assert [v.node for v in report.per_node] == ["n", "w", "v", "d", "e"]
        assert report.overall == Outcome.PASS
        assert report.exit_status == 0

    def test_jobs_must_be_positive(self, patched):
        with pytest.raises(ValueError):
            check_modular(patched.network, patched.interfaces, patched.properties, ScriptedClient([]), jobs=0)

    def test_strawperson_rejects_witness_times(self):
        fixture = running_example_fixture("reach")
        with pytest.raises(NonGloballyInterface):
            check_strawperson(fixture.network, fixture.interfaces, ScriptedClient([]))

    def test_strawperson_reports_are_unsound(self):
        fixture = running_example_fixture("strawperson-bad")
        report = check_strawperson(fixture.network, fixture.interfaces, ScriptedClient([]))
        assert report.unsound
        assert report.mode == "strawperson"


class TestStableState:
    def test_condition_shape(self):
        fixture = running_example_fixture("base")
        vc = stable_condition(fixture.network, fixture.properties)
        assert vc.label == "monolithic"
        assert [name for name, _ in vc.variables] == [stable_var(v) for v in fixture.network.nodes]

    def test_fixed_point_satisfies_it(self):
        fixture = running_example_fixture("base")
        final = simulate(fixture.network).final()
        vc = stable_condition(fixture.network, fixture.properties)
        replay = replay_counterexample(vc, {stable_var(v): route for v, route in final.items()})
        assert replay.hypotheses_hold and replay.conclusion_holds


class TestReports:
    def test_percentile_is_nearest_rank(self):
        values = [5.0, 1.0, 3.0, 2.0, 4.0]
        assert percentile(values, 0.5) == 3.0
        assert percentile(values, 0.99) == 5.0
        assert percentile([], 0.5) == 0.0
        assert percentile([7.0, 8.0], 0.5) == 7.0

    def verdict(self, node, status, seconds):
        return NodeVerdict(node=node, conditions=[ConditionResult(kind=ConditionKind.INITIAL, status=status, wall_seconds=seconds)])

    def test_exit_status_precedence(self):
        valid = self.verdict("a", ConditionStatus.VALID, 1.0)
        failing = self.verdict("b", ConditionStatus.COUNTEREXAMPLE, 2.0)
        unknown = self.verdict("c", ConditionStatus.UNKNOWN, 3.0)
        assert CheckReport.from_verdicts("modular", [valid], 1.0).exit_status == 0
        assert CheckReport.from_verdicts("modular", [valid, failing], 1.0).exit_status == 1
        assert CheckReport.from_verdicts("modular", [failing, unknown], 1.0).exit_status == 3

    def test_aggregates(self):
        verdicts = [self.verdict(str(i), ConditionStatus.VALID, float(i)) for i in range(1, 6)]
        report = CheckReport.from_verdicts("modular", verdicts, 9.0)
        assert report.median_node_time == 3.0
        assert report.p99_node_time == 5.0
        assert report.failing_nodes() == []
        assert report.verdict("4").total_seconds == 4.0
