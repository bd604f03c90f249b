"""Countdown automata, one per event, over the two-letter alphabet {tick, event}."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .core import TICK, Automaton, Interval, default_timer

__all__ = ["TimerKind", "TimerAutomaton", "build_timer_automaton", "build_timer_automata"]


class TimerKind(str, enum.Enum):
    PROSPECTIVE = "prospective"
    REMOTE = "remote"


@dataclass(frozen=True)
class TimerAutomaton:
    owner: str
    kind: TimerKind
    automaton: Automaton

    @property
    def default(self) -> int:
        return self.automaton.initial


def build_timer_automaton(event: str, timers: Mapping[str, Interval]) -> TimerAutomaton:
    """States are the timer values themselves; the default value is initial and marked."""
    iv = timers[event]
    top = default_timer(event, timers)
    triples = [(i + 1, TICK, i) for i in range(top)]
    if iv.finite:
        kind = TimerKind.PROSPECTIVE
        triples += [(i, event, top) for i in range(iv.upper - iv.lower + 1)]
    else:
        kind = TimerKind.REMOTE
        triples += [(0, event, top), (0, TICK, 0)]
    aut = Automaton.from_triples(range(top + 1), triples, top, {top}, labels=(TICK, event))
    return TimerAutomaton(event, kind, aut)


def build_timer_automata(events, timers: Mapping[str, Interval]) -> tuple[TimerAutomaton, ...]:
    return tuple(build_timer_automaton(e, timers) for e in events)
