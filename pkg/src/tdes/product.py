"""Generalized synchronous product of the transformed activity and timer automata.

Every component moves on every step.  The activity component picks the
transition first; its placeholder vector then dictates, coordinate by
coordinate, which annotated label each timer component must fire.  The fused
label is the bare event or tick.

:func:`naive_product` is the textbook shared-event product of the
untransformed automata, kept to show where it goes wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    TICK, Automaton, Marking, TdesError, TdesSpec, TimedState, TimerEvent, TimerTick,
)
from .direct import Tdes, explore
from .timers import build_timer_automata
from .transform import TransformedActivity, TransformedTimer, transform_activity, transform_timer

__all__ = [
    "ProductState", "Components", "build_components", "sync_step", "build_product",
    "synchronous_product", "shared_event_step", "naive_components", "naive_product",
]

#: Product states use the same (activity, timer vector) shape as timed states.
ProductState = TimedState


@dataclass(frozen=True)
class Components:
    activity: TransformedActivity
    timers: tuple[TransformedTimer, ...]


def build_components(spec: TdesSpec) -> Components:
    raw = build_timer_automata(spec.events, spec.timers)
    return Components(
        transform_activity(spec.activity),
        tuple(transform_timer(g, spec.events) for g in raw),
    )


def sync_step(components: Components, p: ProductState, label: str) -> ProductState | None:
    """One fully synchronized move on ``label`` (an event name or the tick)."""
    act, timer_states = p
    if len(timer_states) != len(components.timers):
        raise TdesError("product state has the wrong number of timer coordinates")
    activity = components.activity
    if act not in activity.automaton.delta:
        raise TdesError(f"unknown activity {act!r}")

    if label == TICK:
        act_label = activity.tick_label(act)
        wanted = [TimerTick(flag) for flag in act_label.placeholders]
    else:
        act_label = activity.event_label(act, label)
        if act_label is None:
            return None
        wanted = [TimerEvent(label, eff) for eff in act_label.effects]

    new = []
    for timer, state, timer_label in zip(components.timers, timer_states, wanted):
        dst = timer.automaton.step(state, timer_label)
        if dst is None:
            return None
        new.append(dst)
    return ProductState(activity.automaton.delta[act][act_label], tuple(new))


def build_product(spec: TdesSpec, marking: Marking = Marking.DEFAULT_ONLY) -> Tdes:
    """Reachable part of the generalized product, over the same state shape as the direct build."""
    marking = Marking(marking)
    comps = build_components(spec)
    initial = ProductState(
        comps.activity.automaton.initial, tuple(t.automaton.initial for t in comps.timers))
    labels = [TICK, *spec.events]
    delta, order, expansions = explore(initial, labels, lambda p, lab: sync_step(comps, p, lab))

    if marking is Marking.FULL_PRODUCT:
        timer_marks = [t.automaton.states for t in comps.timers]
    else:
        timer_marks = [t.automaton.marked for t in comps.timers]
    act_marks = comps.activity.automaton.marked
    marked = frozenset(
        p for p in order
        if p.activity in act_marks and all(v in m for v, m in zip(p.timers, timer_marks))
    )
    aut = Automaton(frozenset(order), frozenset(labels), delta, initial, marked)
    return Tdes(aut, spec, expansions)


def shared_event_step(automata: Sequence[Automaton], state: tuple, label) -> tuple | None:
    """Standard synchronous product step: components sharing ``label`` move together, others stay."""
    new = []
    for aut, s in zip(automata, state):
        if label in aut.labels:
            dst = aut.step(s, label)
            if dst is None:
                return None
            new.append(dst)
        else:
            new.append(s)
    return tuple(new)


def synchronous_product(automata: Sequence[Automaton]) -> Automaton:
    """Reachable part of the shared-event product of ``automata``."""
    labels = sorted(set().union(*(a.labels for a in automata)), key=str)
    initial = tuple(a.initial for a in automata)
    delta, order, _ = explore(initial, labels, lambda s, lab: shared_event_step(automata, s, lab))
    marked = frozenset(s for s in order if all(x in a.marked for x, a in zip(s, automata)))
    return Automaton(frozenset(order), frozenset(labels), delta, initial, marked)


def naive_components(spec: TdesSpec) -> list[Automaton]:
    """Activity and raw timer automata with self-loops added for every label they lack."""
    g = spec.activity
    act_triples = list(g.transitions) + [(a, TICK, a) for a in g.states]
    full = {TICK, *spec.events}
    out = [Automaton.from_triples(g.states, act_triples, g.initial, g.marked, labels=full)]
    for timer in build_timer_automata(spec.events, spec.timers):
        aut = timer.automaton
        loops = [(i, e, i) for i in aut.states for e in spec.events if e != timer.owner]
        out.append(Automaton.from_triples(
            aut.states, [*aut.transitions(), *loops], aut.initial, aut.marked, labels=full))
    return out


def naive_product(spec: TdesSpec) -> Automaton:
    """The unsound shared-event product, with states flattened to :class:`TimedState`."""
    raw = synchronous_product(naive_components(spec))

    def flat(s):
        return TimedState(s[0], tuple(s[1:]))

    delta = {flat(s): {lab: flat(d) for lab, d in row.items()} for s, row in raw.delta.items()}
    return Automaton(frozenset(delta), raw.labels, delta, flat(raw.initial),
                     frozenset(flat(s) for s in raw.marked))
