"""Annotate activity and timer automata so they can be composed by label matching.

Tick self-loops on the activity side record which events are enabled; event
transitions record which events stay enabled afterwards.  Timer automata get
matching split transitions: a foreign event either freezes the timer (``E``)
or resets it (``D``), and the tick either counts down (``σ!``) or idles at the
default value (``~σ!``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    TICK, ActEvent, ActivityAutomaton, ActTick, Automaton, Effect, Enablement,
    TimerEvent, TimerTick,
)
from .timers import TimerAutomaton

__all__ = ["TransformedActivity", "TransformedTimer", "transform_activity", "transform_timer"]


@dataclass(frozen=True)
class TransformedActivity:
    automaton: Automaton

    def tick_label(self, activity: str) -> ActTick:
        for label in self.automaton.delta[activity]:
            if isinstance(label, ActTick):
                return label
        raise KeyError(activity)

    def event_label(self, activity: str, event: str) -> ActEvent | None:
        for label in self.automaton.delta[activity]:
            if isinstance(label, ActEvent) and label.event == event:
                return label
        return None


@dataclass(frozen=True)
class TransformedTimer:
    owner: str
    automaton: Automaton

    @property
    def default(self) -> int:
        return self.automaton.initial


def transform_activity(g: ActivityAutomaton) -> TransformedActivity:
    enabled = g.enabled
    triples = []
    for a in g.states:
        flags = tuple(Enablement(e, e in enabled[a]) for e in g.alphabet)
        triples.append((a, ActTick(flags), a))
    for a, e, a2 in g.transitions:
        effects = tuple(Effect(x, x in enabled[a2]) for x in g.alphabet)
        triples.append((a, ActEvent(e, effects), a2))
    aut = Automaton.from_triples(g.states, triples, g.initial, g.marked)
    return TransformedActivity(aut)


def transform_timer(g: TimerAutomaton, alphabet: Sequence[str]) -> TransformedTimer:
    sigma = g.owner
    home = g.default
    aut = g.automaton
    triples = []
    for i, label, j in aut.transitions():
        if label == TICK:
            triples.append((i, TimerTick(Enablement(sigma, True)), j))
        else:
            # every own-event transition targets the default value
            triples.append((i, TimerEvent(sigma, Effect(sigma, True)), j))
            triples.append((i, TimerEvent(sigma, Effect(sigma, False)), j))
    for i in sorted(aut.states):
        for other in alphabet:
            if other == sigma:
                continue
            triples.append((i, TimerEvent(other, Effect(sigma, True)), i))
            triples.append((i, TimerEvent(other, Effect(sigma, False)), home))
    triples.append((home, TimerTick(Enablement(sigma, False)), home))
    return TransformedTimer(sigma, Automaton.from_triples(aut.states, triples, home, aut.marked))
