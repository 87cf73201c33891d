#!/usr/bin/env python3
"""
pgx - prime graph explorer
Command-line front end for element-order spectra, prime graphs and
Frobenius structure verification of finite groups
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pythonjsonlogger import jsonlogger

from app.config import settings
from app.services import commands
from app.services.errors import PgxError

# =============================================================================
# Load Environment
# =============================================================================

load_dotenv()

logger = logging.getLogger("pgx")

TEXT_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def configure_logging() -> None:
    """Root logger on stderr; stdout carries only documents"""
    handler = logging.StreamHandler(sys.stderr)
    if settings.log_format == "json":
        handler.setFormatter(jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))
    handler.set_name("pgx")
    root = logging.getLogger()
    for old in [h for h in root.handlers if h.get_name() == "pgx"]:
        root.removeHandler(old)
    root.addHandler(handler)
    level = "DEBUG" if settings.debug else settings.log_level.upper()
    root.setLevel(getattr(logging, level, logging.WARNING))


# =============================================================================
# Arguments
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Element-order spectra, prime graphs and Frobenius structure of finite groups",
    )
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="override the enumeration cap for this run")

    p = sub.add_parser("spectrum", help="order, element orders and mu of a group", parents=[common])
    p.add_argument("descriptor")

    p = sub.add_parser("graph", help="prime graph as JSON or DOT", parents=[common])
    p.add_argument("descriptor")
    p.add_argument("--format", dest="fmt", default="json")

    p = sub.add_parser("compare", help="compare the prime graphs of two groups", parents=[common])
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("components", help="connected components of the prime graph", parents=[common])
    p.add_argument("descriptor")

    p = sub.add_parser("verify", help="verify Frobenius, 2-Frobenius or classification structure", parents=[common])
    p.add_argument("kind", help=", ".join(commands.VERIFY_KINDS))
    p.add_argument("descriptor")
    p.add_argument("--kernel", help="kernel generators as comma-separated cycle lists")
    p.add_argument("--complement", help="complement generators as comma-separated cycle lists")
    p.add_argument("--series", help="'H generators;K generators'")
    return parser


def run(args: argparse.Namespace) -> commands.CommandResult:
    if args.command == "spectrum":
        return commands.cmd_spectrum(args.descriptor)
    if args.command == "graph":
        return commands.cmd_graph(args.descriptor, args.fmt)
    if args.command == "compare":
        return commands.cmd_compare(args.left, args.right)
    if args.command == "components":
        return commands.cmd_components(args.descriptor)
    return commands.cmd_verify(
        args.kind, args.descriptor,
        kernel=args.kernel, complement=args.complement, series=args.series,
    )


def _error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, separators=(",", ":"), ensure_ascii=False) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    cap = args.cap
    previous_cap = settings.enumeration_cap
    if cap is not None:
        if cap < 1:
            _error("InputError", f"--cap must be positive, got {cap}")
            return 2
        settings.enumeration_cap = cap
    try:
        code, document = run(args)
    except PgxError as e:
        logger.warning(f"[CLI] {type(e).__name__}: {e.message}")
        _error(type(e).__name__, e.message)
        return e.exit_code
    except Exception as e:
        logger.exception(f"[CLI] Unexpected error: {e}")
        _error(type(e).__name__, str(e))
        return 2
    finally:
        settings.enumeration_cap = previous_cap
    sys.stdout.write(document)
    return code


if __name__ == "__main__":
    sys.exit(main())
