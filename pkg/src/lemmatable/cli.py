"""Command-line interface: ``run``, ``encode`` and ``dot``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .control import ControlRuleViolation, load_rule
from .dot import export_dot
from .engine import solve
from .grammar import encode_text, load_cfg
from .program import load_program
from .sld import SELECTION_RULES, sld_solve
from .syntax import ParseError, format_literals, parse_literals, var_names
from .terms import Abstraction, Goal

EXIT_OK, EXIT_INPUT, EXIT_RULE = 0, 1, 2


def _render(head, body) -> dict:
    names = var_names([*head, *body], canonical=True)
    return {"head": format_literals(head, names), "body": format_literals(body, names)}


def _status_line(status: str, args) -> str:
    return {
        "fixpoint": "fixpoint",
        "step_limited": f"step-limit {args.max_steps}",
        "depth_limited": f"depth-limit {args.max_depth}",
        "exhausted": "exhausted",
    }[status]


def _execute(args) -> tuple[dict, object]:
    program = load_program(args.program)
    query = parse_literals(args.query)
    if args.engine == "sld":
        if args.abstraction != "identity" or args.dot:
            raise ValueError("--abstraction and --dot need --engine lemma")
        outcome = sld_solve(
            program,
            query,
            SELECTION_RULES[args.selection],
            args.max_depth,
            occurs_check=args.occurs_check,
        )
        solutions = [_render(a.instance(query), ()) for a in outcome.answers]
        stats = {"answers": len(outcome.answers), "resolutions": outcome.steps}
        return {"solutions": solutions, "status": outcome.status, "stats": stats}, None
    result = solve(
        program,
        Goal(query),
        load_rule(args.rule),
        Abstraction.parse(args.abstraction),
        args.max_steps,
        dedup=args.answer_subsumption,
        occurs_check=args.occurs_check,
    )
    solutions = [_render(c.head, c.body.literals) for c in result.solutions]
    return {"solutions": solutions, "status": result.status, "stats": dict(result.stats)}, result.table


def cmd_run(args) -> int:
    payload, table = _execute(args)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for sol in payload["solutions"]:
            print(f"{sol['head']} :- {sol['body']}." if sol["body"] else f"{sol['head']}.")
        print(_status_line(payload["status"], args))
        print(" ".join(f"{k}={v}" for k, v in payload["stats"].items()))
    if args.dot:
        Path(args.dot).write_text(export_dot(table), encoding="utf-8")
    return EXIT_OK


def cmd_dot(args) -> int:
    args.engine = "lemma"
    _, table = _execute(args)
    text = export_dot(table)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_encode(args) -> int:
    text = encode_text(load_cfg(args.grammar))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _add_query_options(p: argparse.ArgumentParser, with_engine: bool):
    p.add_argument("--program", required=True, help="program file (.lp)")
    p.add_argument("--query", required=True, help="comma-separated literals")
    if with_engine:
        p.add_argument("--engine", choices=["lemma", "sld"], default="lemma")
        p.add_argument("--selection", choices=sorted(SELECTION_RULES), default="leftmost",
                       help="SLD selection rule")
        p.add_argument("--max-depth", type=_positive, default=100)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--dot", help="also write the lemma table as DOT to this path")
    p.add_argument("--rule", default="builtin:leftmost",
                   help="builtin:grammar, builtin:leftmost, builtin:leftmost-program or a .rule file")
    p.add_argument("--abstraction", default="identity", help="identity or depth:N")
    p.add_argument("--max-steps", type=_positive, default=100_000)
    p.add_argument("--no-answer-subsumption", dest="answer_subsumption", action="store_false")
    p.add_argument("--no-occurs-check", dest="occurs_check", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lemmatable", description="Tabled resolution over goal sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="solve a query")
    _add_query_options(run, with_engine=True)
    run.set_defaults(func=cmd_run)

    dot = sub.add_parser("dot", help="solve with the lemma engine and print the table as DOT")
    _add_query_options(dot, with_engine=False)
    dot.add_argument("--out", help="output path (default: stdout)")
    dot.set_defaults(func=cmd_dot, dot=None, selection="leftmost", max_depth=100)

    enc = sub.add_parser("encode", help="compile a grammar file to a program")
    enc.add_argument("grammar", help="grammar file (.cfg)")
    enc.add_argument("out", nargs="?", help="output .lp path (default: stdout)")
    enc.set_defaults(func=cmd_encode)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ControlRuleViolation as e:
        print(f"control rule violation: {e}", file=sys.stderr)
        return EXIT_RULE
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RecursionError:
        # Runaway term growth, e.g. a coarse abstraction on a recursive grammar.
        print("error: terms nested too deeply; lower --max-steps or --max-depth", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
