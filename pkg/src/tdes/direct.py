"""Sequential construction of the timed automaton from an activity automaton and timer map."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable

from .core import (
    TICK, Automaton, Marking, TdesError, TdesSpec, TimedState, reachable,
)

__all__ = ["Tdes", "delta_step", "build_direct", "explore", "reachable", "mark_states"]


@dataclass(frozen=True)
class Tdes:
    """A timed automaton over timed states, plus the spec it came from.

    ``expansions`` counts (state, label) pairs examined while building it.
    """

    automaton: Automaton
    spec: TdesSpec
    expansions: int = 0

    @property
    def states(self):
        return self.automaton.states

    @property
    def initial(self) -> TimedState:
        return self.automaton.initial

    @property
    def marked(self):
        return self.automaton.marked

    def step(self, state, label):
        return self.automaton.step(state, label)


def check_state(spec: TdesSpec, q: TimedState) -> None:
    if q.activity not in spec.activity.enabled:
        raise TdesError(f"unknown activity {q.activity!r}")
    if len(q.timers) != spec.n:
        raise TdesError(f"timer vector has length {len(q.timers)}, expected {spec.n}")
    for e, value, top in zip(spec.events, q.timers, spec.defaults):
        if not 0 <= value <= top:
            raise TdesError(f"timer of {e!r} is {value}, outside [0,{top}]")


def delta_step(spec: TdesSpec, q: TimedState, label: str) -> TimedState | None:
    """Apply one event or tick to ``q``; ``None`` where the transition is undefined.

    Defined on every well-formed state, reachable or not.
    """
    q = TimedState(*q)
    check_state(spec, q)
    a, timers = q
    enabled = spec.activity.enabled[a]
    defaults = spec.defaults

    if label == TICK:
        new = []
        for e, value, default in zip(spec.events, timers, defaults):
            if e not in enabled:
                new.append(default)
            elif e in spec.prospective:
                if value == 0:
                    return None
                new.append(value - 1)
            else:
                new.append(max(value - 1, 0))
        return TimedState(a, tuple(new))

    if label not in spec.timers:
        raise TdesError(f"unknown label {label!r}")
    if label not in enabled:
        return None
    i = spec.index(label)
    iv = spec.timers[label]
    if iv.finite:
        if timers[i] > iv.upper - iv.lower:
            return None
    elif timers[i] != 0:
        return None

    a2 = spec.activity.delta[a, label]
    enabled2 = spec.activity.enabled[a2]
    new = [
        default if (e == label or e not in enabled2) else value
        for e, value, default in zip(spec.events, timers, defaults)
    ]
    return TimedState(a2, tuple(new))


def explore(initial: Hashable, labels: list, step: Callable) -> tuple[dict, list, int]:
    """Breadth-first exploration; labels are tried in the order given.

    Returns ``(delta, order, expansions)`` where ``order`` lists states in
    discovery order.
    """
    delta: dict = {initial: {}}
    order = [initial]
    queue = deque(order)
    expansions = 0
    while queue:
        src = queue.popleft()
        row = delta[src]
        for label in labels:
            expansions += 1
            dst = step(src, label)
            if dst is None:
                continue
            row[label] = dst
            if dst not in delta:
                delta[dst] = {}
                order.append(dst)
                queue.append(dst)
    return delta, order, expansions


def mark_states(spec: TdesSpec, states, marking: Marking) -> frozenset:
    marking = Marking(marking)
    marker = spec.activity.marked
    if marking is Marking.FULL_PRODUCT:
        return frozenset(q for q in states if q.activity in marker)
    return frozenset(q for q in states if q.activity in marker and q.timers == spec.defaults)


def build_direct(spec: TdesSpec, marking: Marking = Marking.DEFAULT_ONLY) -> Tdes:
    """Reachable part of the timed automaton, computed transition by transition."""
    labels = [TICK, *spec.events]
    delta, order, expansions = explore(
        spec.initial_state, labels, lambda q, label: delta_step(spec, q, label))
    states = frozenset(order)
    aut = Automaton(states, frozenset(labels), delta, spec.initial_state,
                    mark_states(spec, states, marking))
    return Tdes(aut, spec, expansions)
