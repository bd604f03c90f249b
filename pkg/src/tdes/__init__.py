"""Timed discrete-event systems built two ways: by direct semantics and as a synchronous product."""

from .core import (
    INFINITY, TICK, ActEvent, ActivityAutomaton, ActTick, Automaton, Effect, Enablement,
    Interval, Marking, SpecValidationError, TdesError, TdesSpec, TimedState, TimerEvent,
    TimerTick, default_timer, partition_events, reachable, timer_interval, validate_spec,
)
from .direct import Tdes, build_direct, delta_step
from .formats import SpecSyntaxError, emit_dot, emit_json, load_spec, parse_spec, serialize_spec
from .product import build_components, build_product, naive_product, sync_step
from .timers import TimerAutomaton, TimerKind, build_timer_automaton
from .transform import TransformedActivity, TransformedTimer, transform_activity, transform_timer
from .verify import (
    DiffReport, Verdict, check_naive_counterexamples, check_prop1, check_theorem1,
    fuzz_campaign, measure_bound, random_spec,
)

__version__ = "0.1.0"
