"""
utils/errors.py — Exception hierarchy shared by services and the CLI.

Every error carries a human-readable ``detail`` and the process exit code
the CLI should return for it, so command handlers never translate errors
by hand.
"""


class FrobeniusKitError(Exception):
    """Base class for all expected failures (bad input, exhausted budgets)."""

    exit_code: int = 2

    def __init__(self, detail: str, exit_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class InputError(FrobeniusKitError):
    """Malformed JSON, schema violations, unknown shorthands."""


class DimensionMismatchError(FrobeniusKitError):
    """A vector or divisor does not match the lattice rank / ray count."""


class InvalidConeError(FrobeniusKitError):
    """Ray data violates primitivity, extremality or strong convexity."""


class InvalidFanError(FrobeniusKitError):
    """Fan is not smooth, or visibly incomplete in dimension <= 2."""


class NotFullDimensionalError(FrobeniusKitError):
    """Generators of a cone do not span Q^d, or its dual is not full-dimensional."""


class InvalidPrimeError(FrobeniusKitError):
    """Characteristic is not a prime, or the Frobenius exponent is < 1."""


class BudgetExceededError(FrobeniusKitError):
    """An enumeration would exceed the configured budget."""


class NotMPrimaryError(FrobeniusKitError):
    """A monomial ideal could not be certified primary to the maximal ideal."""


class NotZeroDimensionalError(FrobeniusKitError):
    """A Gröbner basis has no pure power for some variable."""
