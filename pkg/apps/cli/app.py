"""CLI main entry point."""

import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

import argparse
import logging
import uuid
from typing import List, Optional, Tuple

from pydantic import BaseModel

from common.errors import QcError, UsageError
from common.metrics import Timer, get_collector
from common.models import render
from apps.cli.config import settings
from apps.cli.handlers.commands import cmd_analyze, cmd_bound, cmd_decode, cmd_encode, cmd_mindist

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit through the same path as every other library error."""

    def error(self, message: str) -> None:
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="qc-codes",
        description="Distance bounds and syndrome decoding for quasi-cyclic codes",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    analyze = sub.add_parser("analyze", help="eigenvalues and the best distance bound")
    analyze.add_argument("--code", required=True, help="code definition file")
    analyze.add_argument("--max-nu", type=int, default=None, help="largest nu searched")
    analyze.add_argument("--seed", type=int, default=None, help="seed for witness search and spot checks")
    analyze.add_argument("--cert-out", default=None, help="write the best certificate here")

    bound = sub.add_parser("bound", help="verify explicit certificate parameters")
    bound.add_argument("--code", required=True, help="code definition file")
    bound.add_argument("--cert", default=None, help="certificate file instead of the flags below")
    bound.add_argument("--f", type=int, default=None)
    bound.add_argument("--z", type=int, default=None)
    bound.add_argument("--delta", type=int, default=None)
    bound.add_argument("--nu", type=int, default=None)
    bound.add_argument("--seed", type=int, default=None)
    bound.add_argument("--cert-out", default=None, help="write the verified certificate here")

    encode = sub.add_parser("encode", help="encode a message")
    encode.add_argument("--code", required=True, help="code definition file")
    encode.add_argument("--message", required=True, help="message word file")
    encode.add_argument("--out", default=None, help="write the codeword here")

    decode = sub.add_parser("decode", help="decode a received word")
    decode.add_argument("--code", required=True, help="code definition file")
    decode.add_argument("--cert", required=True, help="certificate file")
    decode.add_argument("--rx", required=True, help="received word file")
    decode.add_argument("--seed", type=int, default=None)

    mindist = sub.add_parser("mindist", help="exact or sampled minimum distance")
    mindist.add_argument("--code", required=True, help="code definition file")
    mindist.add_argument("--method", choices=["brute", "sample"], default="brute")
    mindist.add_argument("--samples", type=int, default=None, help="random codewords for --method sample")
    mindist.add_argument("--seed", type=int, default=None)

    return parser


def run_command(args: argparse.Namespace) -> Tuple[BaseModel, int]:
    """Dispatch parsed arguments; returns the report and the exit code."""
    if args.command == "analyze":
        return cmd_analyze(args.code, max_nu=args.max_nu, seed=args.seed, cert_out=args.cert_out), 0
    if args.command == "bound":
        report = cmd_bound(
            args.code,
            f=args.f,
            z=args.z,
            delta=args.delta,
            nu=args.nu,
            cert_path=args.cert,
            seed=args.seed,
            cert_out=args.cert_out,
        )
        return report, 0
    if args.command == "encode":
        return cmd_encode(args.code, args.message, out=args.out), 0
    if args.command == "decode":
        return cmd_decode(args.code, args.cert, args.rx, seed=args.seed)
    if args.command == "mindist":
        return cmd_mindist(args.code, method=args.method, samples=args.samples, seed=args.seed), 0
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr)
    metrics = get_collector("cli")
    run_id = str(uuid.uuid4())
    exit_code = 0
    error: Optional[str] = None

    with Timer() as timer:
        try:
            args = build_parser().parse_args(argv)
            report, exit_code = run_command(args)
            print(render(report, indent=settings.report_indent))
        except QcError as e:
            logger.error(f"{type(e).__name__}: {e}")
            print(f"error: {e}", file=sys.stderr)
            exit_code, error = e.exit_code, str(e)

    if settings.enable_metrics:
        metrics.record(run_id, timer.elapsed_ms, success=exit_code == 0, error=error)
        metrics.log_summary()
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
