import pytest

from cp_verifier.benchmarks.running_example import running_network, w_route
from cp_verifier.model.errors import NotClosed, NotConverged
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.network import ROUTE_VAR, close_network, fold_routes
from cp_verifier.model.values import render_value
from cp_verifier.simulator import delayed_simulate, render_trace_table, simulate, singleton_interface, trace_to_json
from cp_verifier.temporal.lowering import apply_at


def rendered(trace, v):
    return [render_value(x) for x in trace.states[v]]


class TestSimulate:
    def test_running_example_converges(self):
        trace = simulate(running_network())
        assert trace.converged_at == 3
        assert trace.horizon == 4
        final = {v: render_value(x) for v, x in trace.final().items()}
        assert final == {"n": "∅", "w": "⟨100,0,false⟩", "v": "⟨100,1,true⟩", "d": "⟨100,2,true⟩", "e": "⟨100,3,true⟩"}

    def test_routes_arrive_one_hop_per_step(self):
        trace = simulate(running_network())
        assert rendered(trace, "v")[:2] == ["∅", "⟨100,1,true⟩"]
        assert rendered(trace, "d")[:3] == ["∅", "∅", "⟨100,2,true⟩"]
        assert rendered(trace, "e")[:4] == ["∅", "∅", "∅", "⟨100,3,true⟩"]

    def test_state_past_horizon_repeats_fixed_point(self):
        trace = simulate(running_network())
        assert trace.state("e", 50) == trace.state("e", 3)

    def test_step_bound(self):
        trace = simulate(running_network(), max_steps=2)
        assert trace.converged_at is None
        with pytest.raises(NotConverged):
            trace.state("e", 10)
        with pytest.raises(NotConverged):
            trace.final()

    def test_symbolic_networks_are_rejected(self):
        with pytest.raises(NotClosed):
            simulate(running_network(symbolic_n=True))

    def test_closed_instance_simulates(self):
        open_n = running_network(symbolic_n=True)
        closed = close_network(open_n, {"n_route": w_route()})
        trace = simulate(closed)
        assert trace.converged_at is not None
        # Everything from n is dropped at v.
        assert trace.final()["v"] == simulate(running_network()).final()["v"]

    def test_close_network_checks_assumption(self):
        ghost = running_network(symbolic_n=True, ghost=True)
        with pytest.raises(ValueError):
            close_network(ghost, {"n_route": w_route(ghost=True)})

    def test_fixed_point_satisfies_update(self):
        n = running_network()
        final = simulate(n).final()
        init = {v: eval_expr(n.init[v], {}) for v in n.nodes}
        for v in n.nodes:
            assert fold_routes(n, v, init[v], final) == final[v]


class TestDelayedSimulate:
    def test_zero_delay_matches_synchronous(self):
        n = running_network()
        for seed in range(5):
            assert delayed_simulate(n, 0, seed=seed) == simulate(n)

    def test_stale_reads_only_slow_convergence(self):
        n = running_network()
        sync = simulate(n)

        def always_oldest(edge, t, lo, hi):
            return lo

        trace = delayed_simulate(n, 1, schedule=always_oldest)
        assert trace.converged_at is not None
        assert trace.converged_at >= sync.converged_at
        assert trace.final() == sync.final()

    def test_random_schedules_reach_the_same_state(self):
        n = running_network()
        expected = simulate(n).final()
        for seed in range(10):
            assert delayed_simulate(n, 2, seed=seed).final() == expected

    def test_schedule_outside_window(self):
        with pytest.raises(ValueError):
            delayed_simulate(running_network(), 1, schedule=lambda edge, t, lo, hi: hi + 1)

    def test_negative_delay(self):
        with pytest.raises(ValueError):
            delayed_simulate(running_network(), -1)


class TestSingletonInterface:
    def test_admits_exactly_the_trace(self):
        trace = simulate(running_network())
        a = singleton_interface(trace)
        for v in trace.nodes:
            for t in range(trace.horizon + 3):
                pred = apply_at(a[v], t)
                assert eval_expr(pred, {ROUTE_VAR: trace.state(v, t)}).data
                for other in trace.nodes:
                    route = trace.state(other, t)
                    if route != trace.state(v, t):
                        assert not eval_expr(pred, {ROUTE_VAR: route}).data

    def test_needs_convergence(self):
        with pytest.raises(NotConverged):
            singleton_interface(simulate(running_network(), max_steps=1))


def test_trace_exports():
    trace = simulate(running_network())
    table = render_trace_table(trace)
    assert table.splitlines()[0].split() == ["t", "|", "n", "|", "w", "|", "v", "|", "d", "|", "e"]
    assert table.endswith("converged at t=3")
    doc = trace_to_json(trace)
    assert doc["converged_at"] == 3
    assert doc["rendered"]["e"][3] == "⟨100,3,true⟩"
