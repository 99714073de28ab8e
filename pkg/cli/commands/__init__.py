"""
cli/commands — One module per concern; each exposes ``register(subparsers, common)``.

Shared argument types and the result printer live here.
"""

import argparse
from typing import Any, Callable, List, Tuple

from cli.output import dumps
from models.frobenius import Orientation
from utils.errors import FrobeniusKitError
from utils.numbers import require_prime


# ── Argument types ─────────────────────────────────────────────────────────────

def prime(text: str) -> int:
    try:
        return require_prime(int(text))
    except (ValueError, FrobeniusKitError):
        raise argparse.ArgumentTypeError(f"expected a prime, got {text!r}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def e_range(text: str) -> Tuple[int, int]:
    """``2`` or ``1..5``; 1 <= e_min <= e_max."""
    low, sep, high = text.partition("..")
    try:
        e_min = int(low)
        e_max = int(high) if sep else e_min
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected e or e_min..e_max, got {text!r}")
    if not 1 <= e_min <= e_max:
        raise argparse.ArgumentTypeError(f"need 1 <= e_min <= e_max, got {text!r}")
    return e_min, e_max


def int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def orientation(text: str):
    """``auto`` maps to None: try the stated orientation, then the flipped one."""
    if text == "auto":
        return None
    try:
        return Orientation(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected auto, as-stated or sign-flipped, got {text!r}")


def exponents(args: argparse.Namespace) -> range:
    e_min, e_max = args.e
    return range(e_min, e_max + 1)


# ── Output ─────────────────────────────────────────────────────────────────────

def emit(args: argparse.Namespace, payload: Any, render: Callable[[], str]) -> None:
    """stdout carries results only: JSON or a human-readable table."""
    print(dumps(payload) if args.format == "json" else render())
