"""Command line entry points.

Subcommands: ``eval`` one expression, ``repl`` a line-oriented session,
``check`` the randomized conformance suite, ``convert`` a JSON value
document, and ``serve`` the HTTP wrapper.  Exit codes: 0 success, 1
evaluation or dimension errors, 2 lexing and parsing errors, 3 one or
more conformance checks failed, 4 file and document errors.
"""

import argparse
import json
import sys

from .dsl import bind_bindings, evaluate, format_value, parse_repl_line, parse_script, run_script
from .errors import KetlabError, LexError, MalformedJson, ParseError, UnknownCheckName
from .lemma_suite import run_checks
from .serde import dump_value, load_value

EXIT_OK = 0
EXIT_EVAL = 1
EXIT_SYNTAX = 2
EXIT_CHECKS_FAILED = 3
EXIT_IO = 4


def _complain(message):
    print("error: %s" % message, file=sys.stderr)


def _cmd_eval(args):
    try:
        script = parse_script(args.expression)
    except (LexError, ParseError) as err:
        _complain(err)
        return EXIT_SYNTAX
    try:
        value = run_script(script)
        print(format_value(value, args.precision))
    except KetlabError as err:
        _complain(err)
        return EXIT_EVAL
    return EXIT_OK


def _cmd_repl(args):
    env = {}
    prompt = "ketlab> " if sys.stdin.isatty() else ""
    while True:
        if prompt:
            sys.stderr.write(prompt)
            sys.stderr.flush()
        line = sys.stdin.readline()
        if not line:
            return EXIT_OK
        if not line.strip():
            continue
        try:
            bindings, body = parse_repl_line(line)
            bind_bindings(bindings, env)
            if body is not None:
                print(format_value(evaluate(body, env), args.precision))
        except KetlabError as err:
            _complain(err)


def _cmd_check(args):
    only = None
    if args.only:
        only = [name.strip() for name in args.only.split(",") if name.strip()]
    try:
        report = run_checks(args.seed, args.max_dim, args.trials, filter_names=only)
    except (UnknownCheckName, ValueError) as err:
        _complain(err)
        return EXIT_EVAL
    if args.json:
        print(report.json_text())
    else:
        for row in report.rows:
            print(
                "%-55s pass=%-4d fail=%-4d max_residual=%.3g"
                % (row.name, row.passed, row.failed, row.max_residual)
            )
        failed = sum(1 for row in report.rows if row.failed)
        if failed:
            print("%d check(s) failed" % failed)
        else:
            print("all %d checks passed" % len(report.rows))
    return EXIT_OK if report.all_pass() else EXIT_CHECKS_FAILED


def _cmd_convert(args):
    try:
        with open(args.in_path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
        value = load_value(document)
        with open(args.out_path, "w", encoding="utf-8") as handle:
            json.dump(dump_value(value), handle, indent=2)
            handle.write("\n")
    except (OSError, json.JSONDecodeError, MalformedJson, KetlabError) as err:
        _complain(err)
        return EXIT_IO
    return EXIT_OK


def _cmd_serve(args):
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ketlab", description="finite-dimensional Hilbert space toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one expression and print the result")
    p_eval.add_argument("expression")
    p_eval.add_argument("--precision", type=int, default=9, help="significant digits for numbers")
    p_eval.set_defaults(func=_cmd_eval)

    p_repl = sub.add_parser("repl", help="interactive session; let bindings persist")
    p_repl.add_argument("--precision", type=int, default=9)
    p_repl.set_defaults(func=_cmd_repl)

    p_check = sub.add_parser("check", help="run the randomized conformance suite")
    p_check.add_argument("--seed", type=int, default=42)
    p_check.add_argument("--max-dim", type=int, default=6)
    p_check.add_argument("--trials", type=int, default=200)
    p_check.add_argument("--only", default=None, help="comma-separated check names")
    p_check.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_check.set_defaults(func=_cmd_check)

    p_convert = sub.add_parser("convert", help="normalize a JSON value document")
    p_convert.add_argument("--in", dest="in_path", required=True, metavar="FILE")
    p_convert.add_argument("--out", dest="out_path", required=True, metavar="FILE")
    p_convert.set_defaults(func=_cmd_convert)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)
