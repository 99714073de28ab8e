"""
utils/numbers.py — Scalar helpers: prime checks and lossless decimal text.

Integers are Python ``int`` (arbitrary precision) and rationals are
``fractions.Fraction`` throughout; nothing here ever touches floats.
"""

from fractions import Fraction
from typing import Union

from sympy import isprime

from utils.errors import InputError, InvalidPrimeError

Rational = Union[int, Fraction]


def require_prime(p: int) -> int:
    """Return ``p`` unchanged, or raise InvalidPrimeError."""
    if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
        raise InvalidPrimeError(f"Characteristic must be a prime integer, got {p!r}.")
    return p


def require_exponent(e: int) -> int:
    if not isinstance(e, int) or isinstance(e, bool) or e < 1:
        raise InvalidPrimeError(f"Frobenius exponent e must be an integer >= 1, got {e!r}.")
    return e


def frobenius_q(p: int, e: int) -> int:
    """q = p^e after validating both."""
    return require_prime(p) ** require_exponent(e)


def to_decimal(value: Rational) -> str:
    """Lossless text for JSON: ``"-12"`` or ``"13/8"``."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def parse_integer(value: Union[int, str]) -> int:
    """Accept a JSON number or a decimal string; reject floats and bools."""
    if isinstance(value, bool):
        raise InputError(f"Expected an integer, got {value!r}.")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InputError(f"Expected an integer or decimal string, got {value!r}.")


def parse_rational(value: Union[int, str]) -> Fraction:
    """Accept ``3``, ``"3"`` or ``"13/8"``."""
    if isinstance(value, str) and "/" in value:
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"Expected a rational like '13/8', got {value!r}.")
    return Fraction(parse_integer(value))
