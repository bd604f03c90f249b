"""Domain types for timed discrete-event systems.

An activity automaton plus a timer map (one delay interval per event) is the
input to both constructions in this package.  Everything here is immutable
once built; :func:`validate_spec` is the single gatekeeper for invariants.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Generic, Hashable, Iterable, Iterator, Mapping, NamedTuple, TypeVar

__all__ = [
    "INFINITY", "TICK", "RESERVED_NAMES", "TdesError", "SpecValidationError",
    "NondeterminismError", "Interval", "ActivityAutomaton", "TdesSpec",
    "TimedState", "Enablement", "Effect", "ActTick", "ActEvent", "TimerTick",
    "TimerEvent", "Automaton", "Marking", "partition_events", "timer_interval",
    "default_timer", "validate_spec",
]


class _Infinity(enum.Enum):
    INFINITY = "inf"

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"


#: Upper bound of a right-open interval.  Never compared numerically.
INFINITY = _Infinity.INFINITY

#: The tick label.  Event names may never collide with it.
TICK = "t"
RESERVED_NAMES = frozenset({"t", "tick"})

EVENT_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
STATE_NAME = re.compile(r"[A-Za-z0-9_]+\Z")


class TdesError(ValueError):
    """Base class for input errors."""


class SpecValidationError(TdesError):
    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class NondeterminismError(TdesError):
    pass


class Marking(str, enum.Enum):
    """Which timed states are marked.

    ``DEFAULT_ONLY`` marks marker activities whose timers all sit at their
    default values; ``FULL_PRODUCT`` marks marker activities with any timer
    vector.
    """

    DEFAULT_ONLY = "default"
    FULL_PRODUCT = "full"


@dataclass(frozen=True)
class Interval:
    lower: int
    upper: int | _Infinity = INFINITY

    @property
    def finite(self) -> bool:
        return self.upper is not INFINITY

    def problems(self) -> list[str]:
        out = []
        if not isinstance(self.lower, int) or isinstance(self.lower, bool) or self.lower < 0:
            out.append(f"lower bound {self.lower!r} is not a natural number")
        if self.finite:
            if not isinstance(self.upper, int) or isinstance(self.upper, bool) or self.upper < 0:
                out.append(f"upper bound {self.upper!r} is not a natural number")
            elif not out and self.lower > self.upper:
                out.append(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        return out

    def __str__(self) -> str:
        if self.finite:
            return f"[{self.lower},{self.upper}]"
        return f"[{self.lower},inf)"


def partition_events(timers: Mapping[str, Interval]) -> tuple[frozenset[str], frozenset[str]]:
    """Split events into (prospective, remote) by finiteness of the upper bound."""
    prospective = frozenset(e for e, iv in timers.items() if iv.finite)
    remote = frozenset(e for e, iv in timers.items() if not iv.finite)
    return prospective, remote


def default_timer(event: str, timers: Mapping[str, Interval]) -> int:
    iv = timers[event]
    return iv.upper if iv.finite else iv.lower


def timer_interval(event: str, timers: Mapping[str, Interval]) -> Interval:
    """Range of values the countdown timer of ``event`` can take."""
    return Interval(0, default_timer(event, timers))


@dataclass(frozen=True)
class ActivityAutomaton:
    """Untimed automaton giving the logical order of events.

    ``transitions`` is kept as raw triples so that validation can report
    nondeterminism; use :attr:`delta` for lookups.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: tuple[tuple[str, str, str], ...]
    initial: str
    marked: frozenset[str] = frozenset()

    @cached_property
    def delta(self) -> dict[tuple[str, str], str]:
        return {(a, e): b for a, e, b in self.transitions}

    @cached_property
    def enabled(self) -> dict[str, frozenset[str]]:
        """Events defined at each activity."""
        out: dict[str, set[str]] = {a: set() for a in self.states}
        for a, e, _ in self.transitions:
            out.setdefault(a, set()).add(e)
        return {a: frozenset(es) for a, es in out.items()}


@dataclass(frozen=True)
class TdesSpec:
    activity: ActivityAutomaton
    timers: Mapping[str, Interval]

    @property
    def events(self) -> tuple[str, ...]:
        return self.activity.alphabet

    @property
    def n(self) -> int:
        return len(self.activity.alphabet)

    @cached_property
    def prospective(self) -> frozenset[str]:
        return partition_events(self.timers)[0]

    @cached_property
    def remote(self) -> frozenset[str]:
        return partition_events(self.timers)[1]

    @cached_property
    def defaults(self) -> tuple[int, ...]:
        return tuple(default_timer(e, self.timers) for e in self.events)

    def index(self, event: str) -> int:
        return self.events.index(event)

    @property
    def initial_state(self) -> TimedState:
        return TimedState(self.activity.initial, self.defaults)

    def state_space_size(self) -> int:
        size = len(self.activity.states)
        for d in self.defaults:
            size *= d + 1
        return size


class TimedState(NamedTuple):
    """An activity paired with one timer value per event, in enumeration order."""

    activity: str
    timers: tuple[int, ...]


# Structured labels.  Placeholders are stored already substituted.

@dataclass(frozen=True, order=True)
class Enablement:
    event: str
    enabled: bool

    def __str__(self) -> str:
        return f"{self.event}!" if self.enabled else f"~{self.event}!"


@dataclass(frozen=True, order=True)
class Effect:
    event: str
    enabled: bool

    def __str__(self) -> str:
        return f"{'E' if self.enabled else 'D'}{self.event}"


@dataclass(frozen=True)
class ActTick:
    placeholders: tuple[Enablement, ...]

    def __str__(self) -> str:
        return "(" + ",".join([TICK, *map(str, self.placeholders)]) + ")"


@dataclass(frozen=True)
class ActEvent:
    event: str
    effects: tuple[Effect, ...]

    def __str__(self) -> str:
        return "(" + ",".join([self.event, *map(str, self.effects)]) + ")"


@dataclass(frozen=True)
class TimerTick:
    flag: Enablement

    def __str__(self) -> str:
        return f"({TICK},{self.flag})"


@dataclass(frozen=True)
class TimerEvent:
    trigger: str
    effect: Effect

    @property
    def owner(self) -> str:
        return self.effect.event

    def __str__(self) -> str:
        return f"({self.trigger},{self.effect})"


S = TypeVar("S", bound=Hashable)
L = TypeVar("L", bound=Hashable)


@dataclass(frozen=True, eq=False)
class Automaton(Generic[S, L]):
    """Deterministic finite labelled transition system.

    ``delta`` maps a source state to its outgoing ``{label: target}`` table.
    Build instances with :meth:`from_triples` unless the table is already
    known to be well-formed.
    """

    states: frozenset
    labels: frozenset
    delta: Mapping[S, Mapping[L, S]]
    initial: S
    marked: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_triples(cls, states: Iterable[S], triples: Iterable[tuple[S, L, S]],
                     initial: S, marked: Iterable[S] = (),
                     labels: Iterable[L] | None = None) -> "Automaton[S, L]":
        states = frozenset(states)
        delta: dict = {s: {} for s in states}
        seen_labels = set()
        for src, label, dst in triples:
            if src not in states or dst not in states:
                raise TdesError(f"transition {(src, label, dst)!r} leaves the state set")
            row = delta[src]
            if label in row and row[label] != dst:
                raise NondeterminismError(
                    f"label {label!s} at {src!r} leads to both {row[label]!r} and {dst!r}")
            row[label] = dst
            seen_labels.add(label)
        if initial not in states:
            raise TdesError(f"initial state {initial!r} not in state set")
        marked = frozenset(marked)
        if not marked <= states:
            raise TdesError("marked states must be a subset of the state set")
        all_labels = frozenset(seen_labels if labels is None else set(labels) | seen_labels)
        return cls(states, all_labels, delta, initial, marked)

    def step(self, state: S, label: L) -> S | None:
        return self.delta.get(state, {}).get(label)

    def transitions(self) -> Iterator[tuple[S, L, S]]:
        for src, row in self.delta.items():
            for label, dst in row.items():
                yield src, label, dst

    def __len__(self) -> int:
        return len(self.states)

    @property
    def num_transitions(self) -> int:
        return sum(len(row) for row in self.delta.values())


def reachable(aut: Automaton) -> Automaton:
    """Restrict ``aut`` to the states reachable from its initial state."""
    seen = {aut.initial}
    queue = deque([aut.initial])
    while queue:
        s = queue.popleft()
        for dst in aut.delta.get(s, {}).values():
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
    delta = {s: dict(aut.delta.get(s, {})) for s in seen}
    return Automaton(frozenset(seen), aut.labels, delta, aut.initial, aut.marked & seen)


def validate_spec(spec: TdesSpec) -> TdesSpec:
    """Check every structural invariant of ``spec`` and return a canonical copy.

    Raises :class:`SpecValidationError` listing all problems found.
    """
    errors: list[str] = []
    g = spec.activity
    events = tuple(g.alphabet)
    if len(set(events)) != len(events):
        dupes = sorted({e for e in events if events.count(e) > 1})
        errors.append(f"duplicate event names: {', '.join(dupes)}")
    for e in events:
        if not isinstance(e, str) or not EVENT_NAME.match(e):
            errors.append(f"invalid event name {e!r}")
        elif e in RESERVED_NAMES:
            errors.append(f"event name {e!r} is reserved for the tick")
    for e in events:
        if e not in spec.timers:
            errors.append(f"event {e!r} has no timer interval")
        else:
            errors.extend(f"event {e!r}: {p}" for p in spec.timers[e].problems())
    for e in spec.timers:
        if e not in events:
            errors.append(f"timer declared for unknown event {e!r}")

    states = tuple(g.states)
    if len(set(states)) != len(states):
        errors.append("duplicate activity names")
    for a in states:
        if not isinstance(a, str) or not STATE_NAME.match(a):
            errors.append(f"invalid activity name {a!r}")
    state_set = set(states)
    if g.initial not in state_set:
        errors.append(f"initial activity {g.initial!r} is not declared")
    for a in sorted(set(g.marked) - state_set):
        errors.append(f"marked activity {a!r} is not declared")

    targets: dict[tuple[str, str], str] = {}
    for src, e, dst in g.transitions:
        if src not in state_set:
            errors.append(f"transition {src} {e} {dst}: unknown source activity {src!r}")
        if dst not in state_set:
            errors.append(f"transition {src} {e} {dst}: unknown target activity {dst!r}")
        if e not in events:
            errors.append(f"transition {src} {e} {dst}: unknown event {e!r}")
        prev = targets.setdefault((src, e), dst)
        if prev != dst:
            errors.append(f"nondeterministic transition: {e!r} at {src!r} leads to {prev!r} and {dst!r}")
    if errors:
        raise SpecValidationError(errors)

    # Duplicate identical triples collapse; declaration order is otherwise kept.
    triples = tuple(dict.fromkeys(tuple(t) for t in g.transitions))
    activity = ActivityAutomaton(states, events, triples, g.initial, frozenset(g.marked))
    return TdesSpec(activity, {e: spec.timers[e] for e in events})
