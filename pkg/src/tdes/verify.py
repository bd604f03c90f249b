"""Equivalence checking between the direct and product constructions, and related audits."""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import (
    TICK, ActivityAutomaton, Interval, Marking, TdesSpec, TimedState, validate_spec,
)
from .direct import Tdes, build_direct, delta_step
from .formats import format_label, format_state
from .product import build_product, naive_components, naive_product, shared_event_step

__all__ = [
    "Verdict", "DiffReport", "diff_automata", "check_theorem1", "check_prop1",
    "NaiveReport", "check_naive_counterexamples", "measure_bound", "random_spec",
    "FuzzResult", "check_instance", "fuzz_campaign",
]

#: Seed used by the fuzz campaign unless told otherwise.
DEFAULT_SEED = 20240601


class Verdict(str, enum.Enum):
    EQUAL = "EQUAL"
    DIFFERENT = "DIFFERENT"


@dataclass
class DiffReport:
    missing_states: list[str] = field(default_factory=list)
    extra_states: list[str] = field(default_factory=list)
    missing_transitions: list[tuple[str, str, str]] = field(default_factory=list)
    extra_transitions: list[tuple[str, str, str]] = field(default_factory=list)
    marking_mismatches: list[str] = field(default_factory=list)
    initial_mismatch: tuple[str, str] | None = None

    @property
    def verdict(self) -> Verdict:
        empty = not (self.missing_states or self.extra_states or self.missing_transitions
                     or self.extra_transitions or self.marking_mismatches or self.initial_mismatch)
        return Verdict.EQUAL if empty else Verdict.DIFFERENT

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "missing_states": self.missing_states,
            "extra_states": self.extra_states,
            "missing_transitions": [list(t) for t in self.missing_transitions],
            "extra_transitions": [list(t) for t in self.extra_transitions],
            "marking_mismatches": self.marking_mismatches,
            "initial_mismatch": list(self.initial_mismatch) if self.initial_mismatch else None,
        }

    def summary(self, limit: int = 50) -> str:
        lines = [f"verdict: {self.verdict.value}"]
        if self.initial_mismatch:
            lines.append(f"initial states differ: {self.initial_mismatch[0]} vs {self.initial_mismatch[1]}")
        for name in ("missing_states", "extra_states", "missing_transitions",
                     "extra_transitions", "marking_mismatches"):
            items = getattr(self, name)
            if not items:
                continue
            lines.append(f"{name.replace('_', ' ')} ({len(items)}):")
            for item in items[:limit]:
                lines.append("  " + (" ".join(item) if isinstance(item, tuple) else item))
            if len(items) > limit:
                lines.append(f"  ... {len(items) - limit} more")
        return "\n".join(lines)


def _canonical(aut):
    aut = getattr(aut, "automaton", aut)
    states = {format_state(s) for s in aut.states}
    transitions = {(format_state(s), format_label(lab), format_state(d))
                   for s, lab, d in aut.transitions()}
    marked = {format_state(s) for s in aut.marked}
    return states, transitions, marked, format_state(aut.initial)


def diff_automata(expected, actual) -> DiffReport:
    """Compare two automata by their canonical state and label strings."""
    s1, t1, m1, i1 = _canonical(expected)
    s2, t2, m2, i2 = _canonical(actual)
    return DiffReport(
        missing_states=sorted(s1 - s2),
        extra_states=sorted(s2 - s1),
        missing_transitions=sorted(t1 - t2),
        extra_transitions=sorted(t2 - t1),
        marking_mismatches=sorted(m1 ^ m2),
        initial_mismatch=None if i1 == i2 else (i1, i2),
    )


def check_theorem1(spec: TdesSpec, marking: Marking = Marking.DEFAULT_ONLY) -> DiffReport:
    """Diff of the product construction against the direct one (direct is 'expected')."""
    return diff_automata(build_direct(spec, marking), build_product(spec, marking))


def check_prop1(g: Tdes, spec: TdesSpec | None = None) -> list[TimedState]:
    """States where some event is disabled yet its timer is off its default value."""
    spec = spec or g.spec
    enabled = spec.activity.enabled
    bad = []
    for q in getattr(g, "automaton", g).states:
        on = enabled[q.activity]
        if any(e not in on and v != d for e, v, d in zip(spec.events, q.timers, spec.defaults)):
            bad.append(q)
    return sorted(bad, key=format_state)


@dataclass
class NaiveReport:
    naive_tick_from_initial: TimedState | None
    correct_tick_from_initial: TimedState | None
    naive_has_bad_tick: bool
    correct_has_bad_tick: bool
    naive_event_step: tuple | None
    correct_event_step: TimedState | None
    products_differ: bool

    @property
    def reproduced(self) -> bool:
        return (self.naive_has_bad_tick and not self.correct_has_bad_tick
                and self.products_differ
                and (self.correct_event_step is None
                     or self.naive_event_step != self.correct_event_step))


def check_naive_counterexamples(spec: TdesSpec, probe: TimedState | None = None,
                                probe_event: str | None = None) -> NaiveReport:
    """Show the plain shared-event product disagrees with the timed semantics.

    Always probes the tick from the initial state; if ``probe`` and
    ``probe_event`` are given, also compares one event step from ``probe``.
    """
    direct = build_direct(spec)
    naive = naive_product(spec)
    q0 = spec.initial_state
    naive_tick = naive.step(q0, TICK)
    correct_tick = direct.step(q0, TICK)
    bad_tick = (format_state(q0), TICK, format_state(naive_tick)) if naive_tick else None
    correct_set = {(format_state(s), format_label(lab), format_state(d))
                   for s, lab, d in direct.automaton.transitions()}

    naive_step = correct_step = None
    if probe is not None and probe_event is not None:
        raw = shared_event_step(naive_components(spec), (probe.activity, *probe.timers), probe_event)
        naive_step = TimedState(raw[0], tuple(raw[1:])) if raw else None
        correct_step = delta_step(spec, probe, probe_event)

    return NaiveReport(
        naive_tick_from_initial=naive_tick,
        correct_tick_from_initial=correct_tick,
        naive_has_bad_tick=bad_tick is not None and bad_tick not in correct_set,
        correct_has_bad_tick=bad_tick is not None and bad_tick in correct_set,
        naive_event_step=naive_step,
        correct_event_step=correct_step,
        products_differ=diff_automata(direct, naive).verdict is Verdict.DIFFERENT,
    )


def measure_bound(spec: TdesSpec) -> tuple[int, int]:
    """(expansions performed by the product build, worst-case expansion count)."""
    visited = build_product(spec).expansions
    bound = (spec.n + 1) * spec.state_space_size()
    return visited, bound


def random_spec(rng: random.Random, max_states: int = 5, max_events: int = 3,
                max_bound: int = 4, density: float = 0.7) -> TdesSpec:
    """Random valid spec: uniform edges with probability ``density``, half the events remote."""
    n_states = rng.randint(1, max_states)
    n_events = rng.randint(0, max_events)
    states = tuple(str(i) for i in range(n_states))
    events = tuple("abcdefghijklmnopqrs"[i] for i in range(n_events))
    timers = {}
    for e in events:
        lo = rng.randint(0, max_bound)
        if rng.random() < 0.5:
            timers[e] = Interval(lo)
        else:
            hi = rng.randint(0, max_bound)
            timers[e] = Interval(min(lo, hi), max(lo, hi))
    transitions = tuple(
        (a, e, rng.choice(states)) for a in states for e in events if rng.random() < density)
    marked = frozenset(a for a in states if rng.random() < 0.5)
    activity = ActivityAutomaton(states, events, transitions, "0", marked)
    return validate_spec(TdesSpec(activity, timers))


@dataclass
class FuzzResult:
    index: int
    spec: TdesSpec
    reports: dict[str, DiffReport]
    prop1_direct: list
    prop1_product: list
    visited: int
    bound: int

    @property
    def ok(self) -> bool:
        return (all(r.verdict is Verdict.EQUAL for r in self.reports.values())
                and not self.prop1_direct and not self.prop1_product
                and self.visited <= self.bound)


def check_instance(spec: TdesSpec, index: int = 0,
                   markings=(Marking.DEFAULT_ONLY, Marking.FULL_PRODUCT)) -> FuzzResult:
    reports = {Marking(m).value: check_theorem1(spec, m) for m in markings}
    direct = build_direct(spec)
    product = build_product(spec)
    return FuzzResult(
        index=index,
        spec=spec,
        reports=reports,
        prop1_direct=check_prop1(direct),
        prop1_product=check_prop1(product),
        visited=product.expansions,
        bound=(spec.n + 1) * spec.state_space_size(),
    )


def _check_indexed(args):
    index, spec = args
    return check_instance(spec, index)


def fuzz_campaign(count: int = 500, seed: int = DEFAULT_SEED, jobs: int = 1,
                  **gen_kwargs) -> list[FuzzResult]:
    """Check ``count`` seeded random specs; output order and content do not depend on ``jobs``."""
    rng = random.Random(seed)
    specs = [random_spec(rng, **gen_kwargs) for _ in range(count)]
    if jobs <= 1:
        return [check_instance(s, i) for i, s in enumerate(specs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_check_indexed, enumerate(specs), chunksize=16))
