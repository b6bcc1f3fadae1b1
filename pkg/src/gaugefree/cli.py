"""Command line front end: ``gaugefree analyze|verify FILE``."""

from __future__ import annotations

import argparse
import sys

from .leavitt import OracleResourceError
from .report import (
    ConsistencyError,
    InputError,
    analyze,
    parse_groups,
    parse_input,
    to_json,
    to_text,
    verify,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2
EXIT_RESOURCE = 3

EPILOG = """\
input: a JSON document, either graph form
  {"vertices": [...], "edges": [{"id", "src", "dst"}, ...], "infinite": [{"src", "dst"}, ...]}
or matrix form
  {"points": [...], "dims": [[n | "inf", ...], ...]}
Use '-' to read standard input.

verify runs the Leavitt path algebra oracle, which can only certify freeness.
An undecided oracle therefore AGREES with a not-free verdict; only
"free but undecided" is reported as a disagreement (exit code 2).

exit codes: 0 ok/agreement, 1 usage or parse error, 2 verify disagreement,
3 oracle resource cap exceeded.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gaugefree",
        description="Decide freeness of gauge actions on graph and Cuntz-Pimsner algebras.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("analyze", "run the freeness analyzer"), ("verify", "analyze and cross-check with the oracle")):
        p = sub.add_parser(name, help=help_, epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("path", help="input JSON file, or '-' for stdin")
        p.add_argument("--groups", default="full,2,3", help="comma list of 'full' and k >= 2 (default: full,2,3)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-len", type=int, default=6, help="oracle factor length bound (default 6)")
        p.add_argument("--oracle-bundle-size", type=int, default=3, help="edges standing in for an infinite bundle (default 3)")
        p.add_argument("--budget", type=int, default=5_000_000, help="oracle product budget per vertex search")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(args.path, "rb") as fh:
                raw = fh.read()
        doc = parse_input(raw)
        groups = parse_groups(args.groups)
        if args.max_len < 0 or args.oracle_bundle_size < 1:
            raise InputError("--max-len must be >= 0 and --oracle-bundle-size >= 1")
        if args.command == "analyze":
            report = analyze(doc, groups)
        else:
            report = verify(doc, groups, args.max_len, args.oracle_bundle_size, args.budget)
    except (InputError, OSError) as exc:
        print(f"gaugefree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleResourceError as exc:
        print(f"gaugefree: oracle resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:  # pragma: no cover - would be an internal bug
        print(f"gaugefree: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    sys.stdout.write(to_json(report) if args.format == "json" else to_text(report))
    if args.command == "verify" and not report["agreement"]:
        return EXIT_DISAGREE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
