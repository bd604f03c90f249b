import pathlib

import pytest
from hypothesis import strategies as st

from tdes import ActivityAutomaton, Interval, TdesSpec, load_spec, validate_spec

DATA = pathlib.Path(__file__).parent / "data"
RUNNING = DATA / "running.tdes"


@pytest.fixture
def running_path():
    return RUNNING


@pytest.fixture
def running():
    return load_spec(RUNNING)


def make_spec(events, states, transitions, initial="0", marked=()):
    """``events`` maps name -> (lower, upper or None)."""
    timers = {e: Interval(lo) if hi is None else Interval(lo, hi) for e, (lo, hi) in events.items()}
    activity = ActivityAutomaton(tuple(states), tuple(events), tuple(transitions), initial,
                                 frozenset(marked))
    return validate_spec(TdesSpec(activity, timers))


@st.composite
def specs(draw, max_states=4, max_events=3, max_bound=4):
    n_states = draw(st.integers(1, max_states))
    n_events = draw(st.integers(0, max_events))
    states = [str(i) for i in range(n_states)]
    events = {}
    for name in "abc"[:n_events]:
        lo = draw(st.integers(0, max_bound))
        hi = draw(st.one_of(st.none(), st.integers(lo, max_bound)))
        events[name] = (lo, hi)
    transitions = []
    for a in states:
        for e in events:
            dst = draw(st.one_of(st.none(), st.sampled_from(states)))
            if dst is not None:
                transitions.append((a, e, dst))
    marked = draw(st.sets(st.sampled_from(states)))
    return make_spec(events, states, transitions, marked=marked)


# Acceptance reporting: one pass/fail line per criterion in the terminal summary.

_criteria: dict[int, tuple[str, list[str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = mark.args
    _criteria.setdefault(number, (title, []))[1].append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcomes = _criteria[number]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
