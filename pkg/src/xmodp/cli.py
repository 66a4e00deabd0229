"""Command line interface.

Every command reads a session file, runs one computation, and emits a JSON
report with a top-level "pass" flag.  Exit codes: 0 pass, 1 failed
verification or validation, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import XmodError
from .session import COMMANDS, DATA_ERRORS, USAGE_ERRORS, parse_session, run_command

__all__ = ["build_parser", "main"]

_HELP = {
    "validate": "revalidate every object in the session",
    "equaliser": "equaliser of two parallel morphisms, with universal property sweep",
    "coequaliser": "coequaliser of two parallel morphisms, with universal property sweep",
    "pullback": "pullback of two morphisms into a common target",
    "product": "binary product of two crossed modules over the base",
    "kernel-pair": "kernel pair of a morphism",
    "quotient": "quotient of a crossed module by an equivalence pair set",
    "homset": "assignments from a free object with the given label boundaries",
    "embed": "the presheaf of a crossed module: sets and generator actions",
    "verify-embedding": "compare morphisms with natural transformations for two objects",
    "verify-exact": "compare a construction before and after the embedding",
    "witness-generators": "an assignment that fails to factor through a proper mono",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xmodp",
        description="Crossed modules over a fixed finite base group.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="session file (JSON)")
    common.add_argument("--output", default="-", help="report destination, - for stdout")
    common.add_argument("--budget", type=int, default=None, help="search budget override")
    common.add_argument(
        "--catalogue-order", type=int, default=None, help="catalogue group order bound override"
    )
    common.add_argument(
        "--json",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="emit the full JSON report (default) or a one-line summary",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        sp = sub.add_parser(cmd, parents=[common], help=_HELP[cmd])
        sp.add_argument("names", nargs="*", help="object names (and indices for homset)")
    return parser


def _summary_line(report: dict) -> str:
    status = "PASS" if report.get("pass") else "FAIL"
    extras = []
    for key in ("apex", "count", "hom_count", "nat_count", "error"):
        if key in report:
            value = report[key]
            if isinstance(value, dict):
                value = value.get("name", "?")
            extras.append(f"{key}={value}")
    tail = f" ({', '.join(extras)})" if extras else ""
    return f"{report.get('command', '?')}: {status}{tail}"


def _emit(report: dict, output: str, as_json: bool) -> None:
    text = json.dumps(report, indent=2) if as_json else _summary_line(report)
    if output == "-":
        print(text)
    else:
        Path(output).write_text(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        text = Path(ns.input).read_text()
    except OSError as e:
        print(f"error: cannot read {ns.input}: {e}", file=sys.stderr)
        return 2
    try:
        session = parse_session(text)
        report, code = run_command(
            session,
            ns.command,
            ns.names,
            budget=ns.budget,
            catalogue_order=ns.catalogue_order,
        )
    except USAGE_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except DATA_ERRORS as e:
        report = {
            "command": ns.command,
            "pass": False,
            "error": f"{type(e).__name__}: {e}",
        }
        code = 1
    except XmodError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    _emit(report, ns.output, ns.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
