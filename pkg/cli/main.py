"""
cli/main.py — Batch command-line front end.

Usage:
    python main.py verify-main --cone tests/fixtures/segre.json --p 2 --e 1
    python main.py hk --ring tests/fixtures/segre.json --ideal maximal --p 2 --e 1..2

Exit codes: 0 success, 1 a verification failed, 2 input error.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

# ── Path handling for `python cli/main.py` ────────────────────────────────────
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from cli.commands import corpus, frobenius, groups, hilbert_kunz, positive_int  # noqa: E402
from utils.errors import FrobeniusKitError  # noqa: E402
from utils.settings import settings  # noqa: E402

logger = logging.getLogger(__name__)


# ── Parser ─────────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default="table", help="Output format.")
    common.add_argument(
        "--budget", type=positive_int, default=None,
        help="Enumeration budget (default: FROBENIUSKIT_BUDGET or 10^8).",
    )
    common.add_argument(
        "--workers", type=positive_int, default=None,
        help="Worker processes for enumeration kernels (default: FROBENIUSKIT_WORKERS or 1).",
    )
    common.add_argument(
        "--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level on stderr (default: FROBENIUSKIT_LOG_LEVEL or WARNING).",
    )

    parser = argparse.ArgumentParser(
        prog="frobeniuskit",
        description=(
            "Exact computations with Frobenius pushforwards on toric varieties "
            "and Hilbert-Kunz functions."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for module in (groups, frobenius, hilbert_kunz, corpus):
        module.register(subparsers, common)
    return parser


def configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=(level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


# ── Entry point ────────────────────────────────────────────────────────────────

def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help.
        return exc.code if isinstance(exc.code, int) else 2

    configure_logging(args.log_level)
    logger.debug("Running %s.", args.command)
    try:
        return args.handler(args)
    except FrobeniusKitError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
