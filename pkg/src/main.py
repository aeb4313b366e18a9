import argparse
import json
import logging
import sys
import time
from pathlib import Path

from pydantic import ValidationError

from configs.logger import setup_logging
from exact.errors import ExactError
from exact.fields import Field
from report.models import OutputFormat
from report.render import render_json, render_rows
from report.runner import leonard_table, table_rows, verify_document
from tdpair.documents import dump_document, read_document, system_to_document
from tdpair.errors import InternalInconsistencyError, TDPairError
from tdpair.krawtchouk import KrawtchoukParams, construct_krawtchouk
from tdpair.leonard import construct_leonard
from tdpair.models import CheckId

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

# options whose values may start with a minus sign
SCALAR_OPTIONS = ("--theta", "--thetastar", "--phi", "--p", "--beta")


def _scalars(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _attach_values(argv: list[str]) -> list[str]:
    """Rewrite `--phi -4,-4` as `--phi=-4,-4` so argparse keeps the value."""
    out, k = [], 0
    while k < len(argv):
        if argv[k] in SCALAR_OPTIONS and k + 1 < len(argv):
            out.append(f"{argv[k]}={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def _checks(text: str) -> list[CheckId]:
    try:
        return [CheckId(name) for name in _scalars(text)]
    except ValueError:
        known = ", ".join(c.value for c in CheckId)
        raise argparse.ArgumentTypeError(f"unknown check in {text!r}; known: {known}") from None


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args: argparse.Namespace) -> int:
    """Build a Leonard or Krawtchouk system and write it out."""
    if args.family == "krawtchouk":
        system, data = construct_krawtchouk(KrawtchoukParams.of(args.d, args.p, args.field))
    else:
        system, data = construct_leonard(
            args.d, args.theta, args.thetastar, args.phi, args.field
        )
    _emit(dump_document(system_to_document(system)), args.out)
    if args.table:
        table = leonard_table(data)
        if Path(args.table).suffix.lower() == ".csv":
            text = render_rows([row.model_dump() for row in table.rows], OutputFormat.CSV)
        else:
            text = render_json(table)
        Path(args.table).write_text(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the check suite on a pair or system document."""
    doc = read_document(args.path)
    report = verify_document(
        doc, source=Path(args.path).name, checks=args.checks, beta=args.beta, with_timings=args.timings
    )
    _emit(render_json(report), args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_report(args: argparse.Namespace) -> int:
    """Render rank tables and residual tables as JSON or CSV."""
    doc = read_document(args.path)
    report = verify_document(doc, source=Path(args.path).name, checks=args.checks, beta=args.beta)
    _emit(render_rows(table_rows(report), args.format), args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tdpair", description="Exact checks for tridiagonal pairs and systems")
    parser.add_argument("--log-level", default=None, help="override TDPAIR_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    construct = commands.add_parser("construct", help="build a Leonard or Krawtchouk system")
    families = construct.add_subparsers(dest="family", required=True)
    for family in ("krawtchouk", "leonard"):
        sub = families.add_parser(family)
        sub.add_argument("--d", type=int, required=True, help="diameter")
        sub.add_argument("--field", type=_field, default=Field.rational(), help="rational or prime:<p>")
        sub.add_argument("--out", help="system JSON path (stdout when absent)")
        sub.add_argument("--table", help="Leonard table path, .csv or .json")
        sub.set_defaults(handler=cmd_construct)
    families.choices["krawtchouk"].add_argument("--p", required=True, help="scalar p, not 0 or 1")
    leonard = families.choices["leonard"]
    leonard.add_argument("--theta", type=_scalars, required=True, help="comma separated eigenvalues of A")
    leonard.add_argument("--thetastar", type=_scalars, required=True, help="comma separated eigenvalues of A*")
    leonard.add_argument("--phi", type=_scalars, required=True, help="comma separated split sequence")

    for name, handler in (("verify", cmd_verify), ("report", cmd_report)):
        sub = commands.add_parser(name)
        sub.add_argument("path", help="pair or system JSON")
        sub.add_argument("--out", help="output path (stdout when absent)")
        sub.add_argument("--beta", help="beta for diameter at most 2")
        sub.add_argument("--checks", type=_checks, default=None, help="comma separated check ids")
        sub.set_defaults(handler=handler)
    commands.choices["verify"].add_argument("--timings", action="store_true", help="include per-phase timings")
    commands.choices["report"].add_argument(
        "--format", type=OutputFormat, choices=list(OutputFormat), default=OutputFormat.JSON
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_attach_values(argv))
    setup_logging(args.log_level)
    _start_time = time.perf_counter()
    try:
        return args.handler(args)
    except InternalInconsistencyError as exc:
        # a structural fact failed on an accepted system: not the input's fault
        logger.error("internal inconsistency: %s", exc)
        error = {"response": None, "error": f"internal inconsistency: {exc}", "time": time.perf_counter() - _start_time}
        sys.stderr.write(json.dumps(error) + "\n")
        return EXIT_INTERNAL
    except (TDPairError, ExactError, ValidationError, json.JSONDecodeError, OSError, ValueError) as exc:
        # malformed input: one structured line on stderr
        logger.warning("%s: %s", type(exc).__name__, exc)
        error = {"response": None, "error": str(exc), "time": time.perf_counter() - _start_time}
        sys.stderr.write(json.dumps(error) + "\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
