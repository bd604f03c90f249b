"""Spec file grammar and JSON / DOT output.

Spec files are line oriented, ``#`` starts a comment::

    event <name> prospective <l> <u>
    event <name> remote <l>
    state <name> [marked] [initial]
    trans <src> <event> <dst>

Event declaration order fixes the timer-vector order.
"""

from __future__ import annotations

import json
import re

from .core import (
    ActivityAutomaton, Interval, TdesError, TdesSpec, TimedState, validate_spec,
)

__all__ = [
    "SpecSyntaxError", "parse_spec", "serialize_spec", "load_spec", "format_state",
    "format_label", "to_dict", "emit_json", "emit_dot",
]

_TOKEN = re.compile(r"\S+")


class SpecSyntaxError(TdesError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _natural(tok: str, line: int, col: int) -> int:
    if not tok.isdigit():
        raise SpecSyntaxError(f"expected a natural number, got {tok!r}", line, col)
    return int(tok)


def parse_spec(text: str) -> TdesSpec:
    """Parse and validate a spec file.

    Raises :class:`SpecSyntaxError` for grammar problems and
    :class:`~tdes.core.SpecValidationError` for semantic ones.
    """
    events: list[str] = []
    timers: dict[str, Interval] = {}
    states: list[str] = []
    marked: set[str] = set()
    initial: list[tuple[str, int]] = []
    transitions: list[tuple[str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        matches = list(_TOKEN.finditer(body))
        if not matches:
            continue
        toks = [m.group() for m in matches]
        cols = [m.start() + 1 for m in matches]
        kw = toks[0]

        def expect(count: int, shape: str) -> None:
            if len(toks) != count:
                col = cols[count] if len(toks) > count else len(body.rstrip()) + 1
                raise SpecSyntaxError(f"expected `{shape}`", lineno, col)

        if kw == "event":
            if len(toks) < 3:
                expect(4, "event <name> prospective|remote ...")
            name, kind = toks[1], toks[2]
            if name in timers:
                raise SpecSyntaxError(f"event {name!r} declared twice", lineno, cols[1])
            if kind == "prospective":
                expect(5, "event <name> prospective <l> <u>")
                iv = Interval(_natural(toks[3], lineno, cols[3]), _natural(toks[4], lineno, cols[4]))
            elif kind == "remote":
                expect(4, "event <name> remote <l>")
                iv = Interval(_natural(toks[3], lineno, cols[3]))
            else:
                raise SpecSyntaxError(
                    f"expected `prospective` or `remote`, got {kind!r}", lineno, cols[2])
            events.append(name)
            timers[name] = iv
        elif kw == "state":
            if len(toks) < 2:
                expect(2, "state <name> [marked] [initial]")
            name = toks[1]
            if name in states:
                raise SpecSyntaxError(f"state {name!r} declared twice", lineno, cols[1])
            flags = toks[2:]
            for flag, col in zip(flags, cols[2:]):
                if flag not in ("marked", "initial") or flags.count(flag) > 1:
                    raise SpecSyntaxError(f"unexpected state flag {flag!r}", lineno, col)
            states.append(name)
            if "marked" in flags:
                marked.add(name)
            if "initial" in flags:
                if initial:
                    raise SpecSyntaxError(
                        f"second initial state {name!r} (first was {initial[0][0]!r} "
                        f"on line {initial[0][1]})", lineno, cols[1 + flags.index("initial") + 1])
                initial.append((name, lineno))
        elif kw == "trans":
            expect(4, "trans <src> <event> <dst>")
            transitions.append((toks[1], toks[2], toks[3]))
        else:
            raise SpecSyntaxError(f"unknown keyword {kw!r}", lineno, cols[0])

    if not initial:
        raise SpecSyntaxError("no initial state declared", len(text.splitlines()) + 1, 1)

    activity = ActivityAutomaton(
        tuple(states), tuple(events), tuple(transitions), initial[0][0], frozenset(marked))
    return validate_spec(TdesSpec(activity, timers))


def load_spec(path) -> TdesSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def serialize_spec(spec: TdesSpec) -> str:
    lines = []
    for e in spec.events:
        iv = spec.timers[e]
        if iv.finite:
            lines.append(f"event {e} prospective {iv.lower} {iv.upper}")
        else:
            lines.append(f"event {e} remote {iv.lower}")
    g = spec.activity
    for a in g.states:
        flags = (["marked"] if a in g.marked else []) + (["initial"] if a == g.initial else [])
        lines.append(" ".join(["state", a, *flags]))
    lines += [f"trans {a} {e} {b}" for a, e, b in g.transitions]
    return "\n".join(lines) + "\n"


def format_state(state) -> str:
    if isinstance(state, TimedState):
        return f"({state.activity}|{','.join(map(str, state.timers))})"
    return str(state)


def format_label(label) -> str:
    return str(label)


def to_dict(aut) -> dict:
    """Canonical, sorted plain-data view of an automaton (or a wrapper holding one)."""
    aut = getattr(aut, "automaton", aut)
    transitions = sorted(
        [format_state(s), format_label(lab), format_state(d)] for s, lab, d in aut.transitions())
    return {
        "states": sorted(map(format_state, aut.states)),
        "initial": format_state(aut.initial) if aut.states else None,
        "marked": sorted(map(format_state, aut.marked)),
        "transitions": transitions,
        "alphabet": sorted(map(format_label, aut.labels)),
    }


def emit_json(aut) -> str:
    return json.dumps(to_dict(aut), indent=2, ensure_ascii=False) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(aut, name: str = "G") -> str:
    """Graphviz digraph; marked states are double circles, the initial state has an entry arrow."""
    data = to_dict(aut)
    out = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    marked = set(data["marked"])
    for s in data["states"]:
        shape = "doublecircle" if s in marked else "circle"
        out.append(f"  {_quote(s)} [shape={shape}];")
    if data["initial"] is not None:
        out.append('  "__start" [shape=point, label=""];')
        out.append(f'  "__start" -> {_quote(data["initial"])};')
    for s, lab, d in data["transitions"]:
        out.append(f"  {_quote(s)} -> {_quote(d)} [label={_quote(lab)}];")
    out.append("}")
    return "\n".join(out) + "\n"

