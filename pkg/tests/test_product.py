import pytest
from hypothesis import given, settings

from tdes import (
    TICK, Marking, TimedState, build_components, build_direct, build_product, delta_step,
    naive_product, sync_step,
)
from tdes.product import naive_components, shared_event_step

import oracle
from conftest import make_spec, specs


@pytest.fixture
def comps(running):
    return build_components(running)


class TestSyncStep:
    def test_tick_at_initial(self, comps):
        assert sync_step(comps, TimedState("0", (1, 3)), TICK) == TimedState("0", (0, 3))

    def test_beta_resets_both_timers(self, comps, running):
        q = TimedState("1", (1, 1))
        assert sync_step(comps, q, "b") == TimedState("2", (1, 3)) == delta_step(running, q, "b")

    def test_tick_blocked_by_expired_beta(self, comps):
        assert sync_step(comps, TimedState("1", (1, 0)), TICK) is None

    def test_undefined_event(self, comps):
        assert sync_step(comps, TimedState("0", (1, 3)), "b") is None

    def test_disabled_timer_off_default_blocks_tick(self, comps):
        # unreachable: a disabled at activity 1 but t_a = 0; direct semantics would tick here
        assert sync_step(comps, TimedState("1", (0, 2)), TICK) is None


class TestBuildProduct:
    def test_running_example(self, running):
        g = build_product(running)
        d = build_direct(running)
        assert g.initial == TimedState("0", (1, 3))
        assert len(g.states) == 10 and g.automaton.num_transitions == 13
        assert set(g.automaton.transitions()) == set(d.automaton.transitions())
        assert g.marked == d.marked == {TimedState("0", (1, 3))}

    def test_empty_alphabet(self):
        g = build_product(make_spec({}, ["x"], [], initial="x"))
        q = TimedState("x", ())
        assert g.states == {q}
        assert set(g.automaton.transitions()) == {(q, TICK, q)}

    def test_fused_labels_are_plain(self, running):
        g = build_product(running)
        assert {l for _, l, _ in g.automaton.transitions()} <= {"t", "a", "b"}

    @settings(max_examples=200, deadline=None)
    @given(specs())
    def test_equals_direct(self, spec):
        for m in Marking:
            p, d = build_product(spec, m), build_direct(spec, m)
            assert p.initial == d.initial
            assert p.states == d.states
            assert set(p.automaton.transitions()) == set(d.automaton.transitions())
            assert p.marked == d.marked

    @settings(max_examples=40, deadline=None)
    @given(specs(max_states=3, max_events=2, max_bound=3))
    def test_equals_oracle(self, spec):
        states, trans, _ = oracle.reachable_tdes(spec)
        p = build_product(spec)
        got = {(oracle.fmt(s), l, oracle.fmt(d)) for s, l, d in p.automaton.transitions()}
        assert got == {(oracle.fmt(s), l, oracle.fmt(d)) for s, l, d in trans}

    @given(specs())
    def test_every_component_moves(self, spec):
        comps = build_components(spec)
        g = build_product(spec)
        for p, label, _ in g.automaton.transitions():
            if label == TICK:
                act_label = comps.activity.tick_label(p.activity)
                wanted = [("t", ph) for ph in act_label.placeholders]
            else:
                act_label = comps.activity.event_label(p.activity, label)
                wanted = [(label, eff) for eff in act_label.effects]
            for timer, v, w in zip(comps.timers, p.timers, wanted):
                hits = [lab for lab in timer.automaton.delta[v]
                        if str(lab) == f"({w[0]},{w[1]})"]
                assert len(hits) == 1


class TestNaive:
    def test_naive_ticks_disabled_timer(self, running):
        naive = naive_product(running)
        assert naive.step(TimedState("0", (1, 3)), TICK) == TimedState("0", (0, 2))

    def test_naive_beta_step(self, running):
        got = shared_event_step(naive_components(running), ("1", 0, 1), "b")
        assert got == ("2", 0, 3)
