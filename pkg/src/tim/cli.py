"""Command line interface: ``tim analyze`` and ``tim verify``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tim.analysis import AnalysisConfig, analyze_text
from tim.pddl import PDDLError
from tim.report import render_json, render_rules, render_spaces, render_text
from tim.rules import AnalysisError

EXIT_OK, EXIT_INPUT, EXIT_COUNTEREXAMPLE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tim", description="Infer types and state invariants of a STRIPS domain.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("analyze", "print the analysis report"),
                        ("verify", "check every invariant against exhaustive reachability")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--domain", required=True, type=Path)
        p.add_argument("--problem", required=True, type=Path)
        p.add_argument("--max-states", type=int, default=10_000,
                       help="state guard for property-space extension")
        p.add_argument("--no-static-spaces", action="store_true",
                       help="do not give static properties type-vector bits")
        if name == "analyze":
            p.add_argument("--format", choices=("text", "json"), default="text")
            p.add_argument("--dump", choices=("rules", "spaces"), action="append", default=[])
            p.add_argument("--timings", action="store_true")
            p.add_argument("--verify", action="store_true", help="also run the oracle")
        p.add_argument("--limit", type=int, default=200_000, help="oracle state limit")
    return ap


def _verify(a, limit: int, out) -> int:
    from tim.oracle import check_invariant, check_projection_soundness, enumerate_reachable

    reach = enumerate_reachable(a.domain, a.problem, limit)
    note = " (truncated)" if reach.truncated else ""
    print(f"TIM: VERIFY: {len(reach.states)} reachable states{note}", file=out)
    bad = 0
    v = check_projection_soundness(a.property_spaces(), reach)
    print(f"{'ok  ' if v.ok else 'FAIL'} projection soundness {v.detail}".rstrip(), file=out)
    bad += not v.ok
    for inv in a.invariants():
        v = check_invariant(inv.formula, reach, a.members)
        print(f"{'ok  ' if v.ok else 'FAIL'} {inv.text()}", file=out)
        if not v.ok:
            bad += 1
            facts = " ".join(str(x) for x in sorted(v.counterexample))
            print(f"     counterexample: {facts}", file=out)
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    config = AnalysisConfig(max_states=args.max_states, static_spaces=not args.no_static_spaces)
    try:
        a = analyze_text(args.domain.read_text(), args.problem.read_text(), config)
    except OSError as e:
        print(f"tim: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (PDDLError, AnalysisError) as e:
        print(f"tim: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    for d in a.diagnostics:
        print(f"tim: {d}", file=sys.stderr)
    if args.command == "verify":
        return _verify(a, args.limit, sys.stdout)
    for what in args.dump:
        sys.stdout.write(render_rules(a) if what == "rules" else render_spaces(a))
    if args.format == "json":
        print(render_json(a))
    else:
        sys.stdout.write(render_text(a, timings=args.timings))
    if args.verify:
        return _verify(a, args.limit, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
