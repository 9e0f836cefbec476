"""Command-line front end.

stdout carries one verdict line (plus a payload for the listing commands);
diagnostics, witnesses and ``--trace`` lines go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .corpus import encode_cfg_intersection, parse_grammar
from .errors import GraphSatError
from .graph import Graph
from .oracle import is_consequence_graph
from .procedures import (DEFAULT_BUDGET, Consistent, NotEntailed, Unknown,
                         check_consistency, check_entailment)
from .saturate import ChainState, Status, saturate
from .terms import eval_semantics, holds, parse_sentence, parse_term, parse_theory
from .translate import compile_theory

EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2

SATURATION_TOKENS = {Status.FIXPOINT: "FIXPOINT", Status.CONFLICT: "CONFLICT", Status.BUDGET: "UNKNOWN"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return Graph.from_json(_read(path))


def _write_model(model, args) -> None:
    if not args.model_out:
        return
    text = model.to_dot() if args.format == "dot" else model.to_json() + "\n"
    Path(args.model_out).write_text(text, encoding="utf-8")


def _trace_hook(args):
    if not args.trace:
        return None
    return lambda record: print(record.format(), file=sys.stderr)


def _cmd_consistency(args) -> int:
    theory = parse_theory(_read(args.file))
    verdict = check_consistency(theory, args.max_steps, on_step=_trace_hook(args), keep_trace=False)
    print(verdict.token)
    if isinstance(verdict, Consistent):
        _write_model(verdict.model, args)
    return EXIT_UNKNOWN if isinstance(verdict, Unknown) else EXIT_DECIDED


def _cmd_entail(args) -> int:
    theory = parse_theory(_read(args.file))
    goal = parse_sentence(args.goal)
    verdict = check_entailment(theory, goal, args.max_steps, on_step=_trace_hook(args), keep_trace=False)
    print(verdict.token)
    if isinstance(verdict, NotEntailed):
        x, y = verdict.witness
        print(f"witness: ({x},{y}) falsifies {verdict.direction}", file=sys.stderr)
        _write_model(verdict.countermodel, args)
    return EXIT_UNKNOWN if isinstance(verdict, Unknown) else EXIT_DECIDED


def _cmd_saturate(args) -> int:
    theory = parse_theory(_read(args.file))
    rules = compile_theory(theory, standard=not args.no_standard_rules)
    start = ChainState.initial(_load_graph(args.init)) if args.init else ChainState.initial()
    result = saturate(start, rules, args.max_steps, on_step=_trace_hook(args), keep_trace=False)
    print(SATURATION_TOKENS[result.status])
    if result.witness is not None:
        print(f"conflict: {result.witness}", file=sys.stderr)
    if args.model_out:
        Path(args.model_out).write_text(result.final.graph.to_json() + "\n", encoding="utf-8")
    return EXIT_UNKNOWN if result.status is Status.BUDGET else EXIT_DECIDED


def _cmd_eval(args) -> int:
    parse_theory(_read(args.file))
    graph = _load_graph(args.graph)
    pairs = sorted(eval_semantics(parse_term(args.term), graph))
    print(json.dumps([list(p) for p in pairs]))
    return EXIT_DECIDED


def _cmd_verify(args) -> int:
    theory = parse_theory(_read(args.file))
    graph = _load_graph(args.graph)
    for sentence in theory.sentences:
        if not holds(sentence, graph):
            print("FAIL")
            print(f"sentence fails: {sentence}")
            return EXIT_DECIDED
    report = is_consequence_graph(graph, compile_theory(theory))
    if not report:
        origin, f = report.counterexample
        print("FAIL")
        shown = ",".join(f"{v}↦{w}" for v, w in sorted(f.items()))
        print(f"rule not maintained: {origin} at {shown}")
        return EXIT_DECIDED
    print("PASS")
    return EXIT_DECIDED


def _cmd_encode_cfg(args) -> int:
    theory = encode_cfg_intersection(parse_grammar(_read(args.g1)), parse_grammar(_read(args.g2)))
    sys.stdout.write(str(theory))
    return EXIT_DECIDED


def _cmd_dump_rules(args) -> int:
    rules = compile_theory(parse_theory(_read(args.file)), standard=not args.no_standard_rules)
    print(json.dumps(rules.to_json_obj(), indent=1))
    return EXIT_DECIDED


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-steps", type=int, default=DEFAULT_BUDGET, metavar="N",
                        help="step budget (default %(default)s)")
    common.add_argument("--model-out", metavar="PATH", help="write the model or final graph here")
    common.add_argument("--format", choices=("json", "dot"), default="json", help="model file format")
    common.add_argument("--trace", action="store_true", help="print one line per chain step to stderr")

    parser = _Parser(prog="graphsat", description="Decide consistency and entailment of relational theories.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("consistency", parents=[common], help="is the theory satisfiable by a standard model")
    p.add_argument("file")
    p.set_defaults(run=_cmd_consistency)

    p = sub.add_parser("entail", parents=[common], help="does the theory entail a sentence")
    p.add_argument("file")
    p.add_argument("--goal", required=True, help='"TERM <= TERM" or "TERM = TERM"')
    p.set_defaults(run=_cmd_entail)

    p = sub.add_parser("saturate", parents=[common], help="run the raw chain construction")
    p.add_argument("file")
    p.add_argument("--init", metavar="GRAPH", help="start graph (JSON, vertices 0..n-1)")
    p.add_argument("--no-standard-rules", action="store_true",
                   help="expert use: compile only the theory's own rules")
    p.set_defaults(run=_cmd_saturate)

    p = sub.add_parser("eval", parents=[common], help="evaluate a term on a graph")
    p.add_argument("file")
    p.add_argument("--graph", required=True)
    p.add_argument("--term", required=True)
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="check a graph against the theory and its rules")
    p.add_argument("file")
    p.add_argument("--graph", required=True)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("encode-cfg", parents=[common], help="theory for the intersection of two grammars")
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(run=_cmd_encode_cfg)

    p = sub.add_parser("dump-rules", parents=[common], help="print the compiled graph rules as JSON")
    p.add_argument("file")
    p.add_argument("--no-standard-rules", action="store_true")
    p.set_defaults(run=_cmd_dump_rules)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.max_steps < 0:
            raise UsageError("--max-steps must be non-negative")
        return args.run(args)
    except UsageError as exc:
        print(f"graphsat: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (GraphSatError, ValueError) as exc:
        print(f"graphsat: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
