"""Command line interface.

Exit codes: 0 success, 2 parse error, 3 evaluation error, 4 limit
(a bound cut the result short, or a requested limit exceeds the caps).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..core import EvalError, ParseError
from .languages import default_registry
from .registry import LimitError, WidgetResult

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_LIMIT = 4


def _read_program(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _print_result(result: WidgetResult, as_json: bool):
    if as_json:
        payload = {"ok": True, "result": _envelope(result)}
        print(json.dumps(payload, indent=2))
        return
    if result.kind == "warnings":
        for line in result.body:
            print(line)
        return
    print(result.body)


def _envelope(result: WidgetResult) -> dict:
    envelope = {"kind": result.kind, "body": result.body}
    if result.code_language:
        envelope["language"] = result.code_language
    if result.data is not None:
        envelope["data"] = result.data
    if result.limit_hit:
        envelope["limitHit"] = True
    return envelope


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sosw",
        description="Workbench for small-step operational semantics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-languages", help="list the registered languages")

    examples = sub.add_parser("examples", help="list a language's example programs")
    examples.add_argument("--lang", required=True)
    examples.add_argument("--show-programs", action="store_true")

    run = sub.add_parser("run", help="run one widget over a program")
    run.add_argument("--lang", required=True)
    run.add_argument("--widget", required=True)
    run.add_argument("--program", required=True, help="a file path, or '-' for stdin")
    run.add_argument("--format", choices=["text", "mermaid", "dot", "json"], default=None)
    run.add_argument("--max-states", type=int, default=None)
    run.add_argument("--max-depth", type=int, default=None)
    run.add_argument("--timeout-ms", type=int, default=None)

    serve = sub.add_parser("serve", help="start the JSON HTTP service")
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui-dir", default=None, help="directory with the UI bundle to serve")

    args = parser.parse_args(argv)
    registry = default_registry()

    if args.command == "list-languages":
        for config in registry.languages():
            print(f"{config.id}\t{config.language_name}")
        return EXIT_OK

    if args.command == "examples":
        try:
            config = registry.get(args.lang)
        except ValueError as err:
            print(err, file=sys.stderr)
            return EXIT_PARSE
        for example in config.examples:
            print(f"{example.name}\t{example.description}")
            if args.show_programs:
                print(f"  {example.program}")
        return EXIT_OK

    if args.command == "run":
        params = {}
        if args.max_states is not None:
            params["max_states"] = args.max_states
        if args.max_depth is not None:
            params["max_depth"] = args.max_depth
        if args.timeout_ms is not None:
            params["timeout_ms"] = args.timeout_ms
        if args.format in ("text", "mermaid", "dot"):
            params["format"] = args.format
        try:
            text = _read_program(args.program)
        except OSError as err:
            print(err, file=sys.stderr)
            return EXIT_PARSE
        try:
            result = registry.run_widget(args.lang, args.widget, text, params)
        except ParseError as err:
            print(f"parse error at {err.line}:{err.col}: {err.message}", file=sys.stderr)
            return EXIT_PARSE
        except EvalError as err:
            print(f"evaluation error: {err}", file=sys.stderr)
            return EXIT_EVAL
        except LimitError as err:
            print(f"limit error: {err}", file=sys.stderr)
            return EXIT_LIMIT
        except ValueError as err:
            print(err, file=sys.stderr)
            return EXIT_PARSE
        _print_result(result, as_json=args.format == "json")
        return EXIT_LIMIT if result.limit_hit else EXIT_OK

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        port = args.port if args.port is not None else int(os.environ.get("SOSW_PORT", "8080"))
        ui_dir = Path(args.ui_dir) if args.ui_dir else None
        app = create_app(registry, ui_dir=ui_dir)
        uvicorn.run(app, host=args.host, port=port)
        return EXIT_OK

    parser.error(f"unknown command {args.command!r}")
    return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
