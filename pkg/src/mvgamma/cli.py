"""Command-line driver.

    mvgamma run <script> [--max-size N] [--window B] [--json-out PATH]
    mvgamma check-all [--max-size N] [--window B]

Exit codes: 0 every command passed; 1 at least one check failed; 2 the
script did not parse (or could not be read); 3 a statement was ill-formed;
4 an internal invariant broke.  The report JSON goes to stdout; errors go to
stdout as a single {"error": ...} object so that callers always get JSON.
The environment variable MVGAMMA_SEED is reserved and currently ignored —
every check is exhaustive, nothing is sampled.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InternalInvariantError
from .interp import RunConfig, SemanticError, execute
from .script import ScriptError, parse_script
from .serialize import dumps

__all__ = ["main"]


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def _run_text(text: str, config: RunConfig) -> int:
    try:
        script = parse_script(text)
    except ScriptError as exc:
        _emit(
            {
                "error": {
                    "code": exc.code,
                    "message": str(exc),
                    "line": exc.line,
                    "column": exc.col,
                }
            }
        )
        return 2
    try:
        report = execute(script, config)
    except SemanticError as exc:
        _emit({"error": exc.as_json()})
        return 3
    except InternalInvariantError as exc:
        _emit({"error": {"code": "internal", "message": str(exc)}})
        return 4
    except ScriptError:  # pragma: no cover - parse errors cannot reach execute
        raise
    except Exception as exc:  # noqa: BLE001 - anything unplanned is a breach
        _emit({"error": {"code": "internal", "message": f"{type(exc).__name__}: {exc}"}})
        return 4
    text_out = report.to_text()
    sys.stdout.write(text_out)
    if config.json_out:
        try:
            with open(config.json_out, "w", encoding="utf-8") as fh:
                fh.write(text_out)
        except OSError as exc:
            _emit({"error": {"code": "semantic", "message": f"cannot write report: {exc}"}})
            return 3
    return report.exit_code


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="mvgamma",
        description="Drive the finite segment/enveloping-group toolkit from scripts.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run = sub.add_parser("run", help="parse and execute a script file")
    run.add_argument("script", help="path to the script")
    run.add_argument("--max-size", type=int, default=12, dest="max_size")
    run.add_argument("--window", type=int, default=4)
    run.add_argument("--json-out", default=None, dest="json_out")

    check = sub.add_parser("check-all", help="run every suite over the generated families")
    check.add_argument("--max-size", type=int, default=12, dest="max_size")
    check.add_argument("--window", type=int, default=4)

    args = parser.parse_args(argv)
    if args.subcommand == "run":
        try:
            with open(args.script, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            _emit({"error": {"code": "io", "message": f"cannot read script: {exc}"}})
            return 2
        config = RunConfig(
            max_size=args.max_size, window=args.window, json_out=args.json_out
        )
        return _run_text(text, config)
    config = RunConfig(max_size=args.max_size, window=args.window)
    return _run_text(f"check all --max-size {args.max_size} --window {args.window}\n", config)


if __name__ == "__main__":
    sys.exit(main())
