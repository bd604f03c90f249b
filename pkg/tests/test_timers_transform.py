import pytest
from hypothesis import given

from tdes import (
    TICK, ActEvent, ActTick, Interval, TimerKind, build_timer_automaton, transform_activity,
    transform_timer,
)

from conftest import make_spec, specs

TIMERS = {"a": Interval(1), "b": Interval(2, 3), "g": Interval(0, 0), "z": Interval(0)}


def str_triples(aut):
    aut = getattr(aut, "automaton", aut)
    return {(str(s), str(l), str(d)) for s, l, d in aut.transitions()}


class TestTimerAutomaton:
    def test_remote(self):
        g = build_timer_automaton("a", TIMERS)
        assert g.kind is TimerKind.REMOTE
        assert g.automaton.states == {0, 1}
        assert g.automaton.initial == 1 and g.automaton.marked == {1}
        assert set(g.automaton.transitions()) == {(1, "t", 0), (0, "a", 1), (0, "t", 0)}

    def test_prospective(self):
        g = build_timer_automaton("b", TIMERS)
        assert g.kind is TimerKind.PROSPECTIVE
        assert g.automaton.states == {0, 1, 2, 3}
        assert g.automaton.initial == 3
        assert set(g.automaton.transitions()) == {
            (3, "t", 2), (2, "t", 1), (1, "t", 0), (0, "b", 3), (1, "b", 3)}

    def test_point_prospective_has_no_tick(self):
        g = build_timer_automaton("g", TIMERS)
        assert g.automaton.states == {0}
        assert set(g.automaton.transitions()) == {(0, "g", 0)}

    def test_zero_remote(self):
        g = build_timer_automaton("z", TIMERS)
        assert set(g.automaton.transitions()) == {(0, "z", 0), (0, "t", 0)}

    @given(specs())
    def test_shape(self, spec):
        for e in spec.events:
            g = build_timer_automaton(e, spec.timers)
            aut = g.automaton
            top = g.default
            iv = spec.timers[e]
            assert len(aut.states) == top + 1
            for i in aut.states:
                tick = aut.step(i, TICK)
                if i == 0:
                    assert tick == (None if iv.finite else 0)
                else:
                    assert tick == i - 1
            fires = {i for i in aut.states if aut.step(i, e) is not None}
            assert all(aut.step(i, e) == top for i in fires)
            assert fires == (set(range(iv.upper - iv.lower + 1)) if iv.finite else {0})


def literal_transform(states, owner, default, raw, alphabet):
    """Four-step timer transformation written against plain strings."""
    out = set()
    for i in states:
        for other in alphabet:
            if other != owner:
                out.add((str(i), f"({other},E{owner})", str(i)))
                out.add((str(i), f"({other},D{owner})", str(default)))
    for i, lab, j in raw:
        if lab == owner:
            out.add((str(i), f"({owner},E{owner})", str(j)))
            out.add((str(i), f"({owner},D{owner})", str(j)))
        else:
            out.add((str(i), f"(t,{owner}!)", str(j)))
    out.add((str(default), f"(t,~{owner}!)", str(default)))
    return out


class TestTransformTimer:
    def test_alpha(self):
        g = transform_timer(build_timer_automaton("a", TIMERS), ["a", "b"])
        assert str_triples(g) == {
            ("1", "(t,a!)", "0"), ("0", "(t,a!)", "0"), ("1", "(t,~a!)", "1"),
            ("0", "(a,Ea)", "1"), ("0", "(a,Da)", "1"),
            ("0", "(b,Ea)", "0"), ("1", "(b,Ea)", "1"), ("0", "(b,Da)", "1"), ("1", "(b,Da)", "1"),
        }

    def test_beta_foreign_and_idle_tick(self):
        g = transform_timer(build_timer_automaton("b", TIMERS), ["a", "b"])
        t = str_triples(g)
        assert {("2", "(a,Eb)", "2"), ("2", "(a,Db)", "3")} <= t
        idle = [x for x in t if x[1] == "(t,~b!)"]
        assert idle == [("3", "(t,~b!)", "3")]

    @given(specs())
    def test_matches_literal_procedure(self, spec):
        for e in spec.events:
            raw = build_timer_automaton(e, spec.timers)
            g = transform_timer(raw, spec.events)
            expected = literal_transform(raw.automaton.states, e, raw.default,
                                         raw.automaton.transitions(), spec.events)
            assert str_triples(g) == expected
            assert g.automaton.states == raw.automaton.states
            assert g.automaton.initial == raw.automaton.initial
            assert g.automaton.marked == raw.automaton.marked

    @given(specs())
    def test_counts_and_dichotomy(self, spec):
        n = spec.n
        for e in spec.events:
            raw = build_timer_automaton(e, spec.timers).automaton
            g = transform_timer(build_timer_automaton(e, spec.timers), spec.events).automaton
            ticks = sum(1 for _, l, _ in raw.transitions() if l == TICK)
            own = sum(1 for _, l, _ in raw.transitions() if l == e)
            assert g.num_transitions == ticks + 1 + 2 * own + 2 * (n - 1) * len(raw.states)
            home = raw.initial
            for i in g.states:
                for lab, dst in g.delta[i].items():
                    if str(lab).startswith("(t,~"):
                        assert i == dst == home
                    elif str(lab).endswith(f",D{e})"):
                        assert dst == home
                    elif str(lab).endswith(f",E{e})") and not str(lab).startswith(f"({e},"):
                        assert dst == i


class TestTransformActivity:
    def test_running_example(self, running):
        g = transform_activity(running.activity)
        t = str_triples(g)
        assert ("0", "(t,a!,~b!)", "0") in t
        assert ("0", "(a,Da,Eb)", "1") in t
        assert ("1", "(b,Da,Eb)", "2") in t
        assert ("2", "(b,Ea,Db)", "0") in t
        assert len(t) == 6

    def test_isolated_state(self):
        spec = make_spec({"a": (0, 1), "b": (2, None)}, ["0"], [])
        assert str_triples(transform_activity(spec.activity)) == {("0", "(t,~a!,~b!)", "0")}

    @given(specs())
    def test_structure(self, spec):
        g = transform_activity(spec.activity).automaton
        assert g.states == set(spec.activity.states)
        assert g.initial == spec.activity.initial
        assert g.marked == spec.activity.marked
        projected = set()
        for a in g.states:
            loops = [l for l in g.delta[a] if isinstance(l, ActTick)]
            assert len(loops) == 1
            assert len(loops[0].placeholders) == spec.n
            assert g.delta[a][loops[0]] == a
            for ph, e in zip(loops[0].placeholders, spec.events):
                assert ph.event == e
                assert ph.enabled == (e in spec.activity.enabled[a])
            for lab, dst in g.delta[a].items():
                if isinstance(lab, ActEvent):
                    assert len(lab.effects) == spec.n
                    for eff, e in zip(lab.effects, spec.events):
                        assert eff.enabled == (e in spec.activity.enabled[dst])
                    projected.add((a, lab.event, dst))
        assert projected == set(spec.activity.transitions)


@pytest.mark.parametrize("event", ["a", "b", "g", "z"])
def test_transformed_timers_deterministic(event):
    # from_triples raises on nondeterminism, so construction succeeding is the check
    transform_timer(build_timer_automaton(event, TIMERS), list(TIMERS))
