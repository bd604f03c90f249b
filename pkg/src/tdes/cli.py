"""Command-line interface.

Exit codes: 0 success / equal, 1 a difference or violation was found, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import Marking, TdesError
from .direct import build_direct
from .formats import emit_dot, emit_json, load_spec, to_dict
from .product import build_components, build_product
from .timers import build_timer_automata
from .verify import DEFAULT_SEED, check_instance, fuzz_campaign

EXIT_OK, EXIT_DIFF, EXIT_INPUT = 0, 1, 2


def _emit_many(named: dict, fmt: str) -> str:
    if fmt == "dot":
        return "".join(emit_dot(aut, name) for name, aut in named.items())
    return json.dumps({name: to_dict(aut) for name, aut in named.items()}, indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    spec = load_spec(args.spec)
    build = build_direct if args.method == "direct" else build_product
    g = build(spec, Marking(args.marking))
    _write(emit_dot(g) if args.format == "dot" else emit_json(g), args.out)
    return EXIT_OK


def cmd_timers(args) -> int:
    spec = load_spec(args.spec)
    if args.transformed:
        named = {t.owner: t for t in build_components(spec).timers}
    else:
        named = {t.owner: t for t in build_timer_automata(spec.events, spec.timers)}
    _write(_emit_many(named, args.format), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    spec = load_spec(args.spec)
    act = build_components(spec).activity
    _write(emit_dot(act, "activity") if args.format == "dot" else emit_json(act), args.out)
    return EXIT_OK


def _describe(result, limit: int) -> list[str]:
    lines = []
    for marking, report in result.reports.items():
        lines.append(f"theorem check ({marking} marking): {report.verdict.value}")
        if report.verdict.value != "EQUAL":
            lines.extend("  " + ln for ln in report.summary(limit).splitlines()[1:])
    for name, bad in (("direct", result.prop1_direct), ("product", result.prop1_product)):
        lines.append(f"non-reachability audit ({name}): {len(bad)} violation(s)")
        lines.extend(f"  {v}" for v in bad[:limit])
    status = "ok" if result.visited <= result.bound else "EXCEEDED"
    lines.append(f"expansions: {result.visited} <= bound {result.bound}: {status}")
    return lines


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    result = check_instance(spec)
    fuzz = fuzz_campaign(args.fuzz, args.seed, jobs=args.jobs) if args.fuzz else []
    failed = [r for r in fuzz if not r.ok]
    ok = result.ok and not failed

    if args.json:
        payload = {
            "ok": ok,
            "spec": {m: r.to_dict() for m, r in result.reports.items()},
            "prop1_direct": [str(q) for q in result.prop1_direct],
            "prop1_product": [str(q) for q in result.prop1_product],
            "visited": result.visited,
            "bound": result.bound,
            "fuzz": {"count": len(fuzz), "seed": args.seed,
                     "failures": [r.index for r in failed]},
        }
        print(json.dumps(payload, indent=2))
    else:
        for line in _describe(result, 50):
            print(line)
        if fuzz:
            print(f"fuzz: {len(fuzz) - len(failed)}/{len(fuzz)} specs passed (seed {args.seed})")
            for r in failed[:50]:
                print(f"  spec #{r.index} failed")
    return EXIT_OK if ok else EXIT_DIFF


def cmd_stats(args) -> int:
    spec = load_spec(args.spec)
    direct = build_direct(spec, Marking(args.marking))
    product = build_product(spec, Marking(args.marking))
    bound = (spec.n + 1) * spec.state_space_size()
    print(f"states: {len(direct.states)}")
    print(f"transitions: {direct.automaton.num_transitions}")
    print(f"marked: {len(direct.marked)}")
    print(f"state space: {spec.state_space_size()}")
    print(f"bound: {bound}")
    print(f"visited: {product.expansions}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdes", description="Build and cross-check timed discrete-event systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, formats=True, out=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("spec", help="spec file")
        if formats:
            p.add_argument("--format", choices=["json", "dot"], default="json")
        if out:
            p.add_argument("--out", metavar="FILE", help="write here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "build the timed automaton")
    p.add_argument("--method", choices=["direct", "product"], default="direct")
    p.add_argument("--marking", choices=[m.value for m in Marking], default="default")

    p = add("timers", cmd_timers, "emit the per-event timer automata")
    p.add_argument("--transformed", action="store_true", help="emit the annotated versions")

    add("transform", cmd_transform, "emit the annotated activity automaton")

    p = add("verify", cmd_verify, "check both constructions agree", formats=False, out=False)
    p.add_argument("--fuzz", type=int, default=0, metavar="N", help="also check N random specs")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="S")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the fuzz run")
    p.add_argument("--json", action="store_true", help="complete machine-readable report")

    p = add("stats", cmd_stats, "print sizes and the expansion bound", formats=False, out=False)
    p.add_argument("--marking", choices=[m.value for m in Marking], default="default")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TdesError, OSError) as exc:
        print(f"tdes: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
