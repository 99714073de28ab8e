"""
models/polynomial.py — Sparse polynomials and ideals over a prime field F_p.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Mapping, Tuple

from utils.errors import DimensionMismatchError, InputError

Exponent = Tuple[int, ...]


class MonomialOrder(str, Enum):
    GREVLEX = "grevlex"
    GRLEX = "grlex"
    LEX = "lex"


@dataclass(frozen=True)
class PrimeFieldPoly:
    """
    sum c * x^exponent with c in [1, p-1]; no zero terms are stored and
    terms are sorted by exponent, so equal polynomials compare equal.
    """
    p: int
    n: int
    terms: Tuple[Tuple[Exponent, int], ...]

    @classmethod
    def from_terms(cls, p: int, n: int, terms: Iterable[Tuple[Iterable[int], int]]) -> "PrimeFieldPoly":
        collected: Dict[Exponent, int] = {}
        for exponent, coefficient in terms:
            exponent = tuple(int(k) for k in exponent)
            if len(exponent) != n:
                raise DimensionMismatchError(f"Exponent {exponent} has {len(exponent)} entries, expected {n}.")
            if any(k < 0 for k in exponent):
                raise InputError(f"Negative exponent in {exponent}.")
            collected[exponent] = (collected.get(exponent, 0) + int(coefficient)) % p
        return cls(p, n, tuple(sorted((m, c) for m, c in collected.items() if c)))

    @classmethod
    def from_mapping(cls, p: int, n: int, terms: Mapping[Exponent, int]) -> "PrimeFieldPoly":
        return cls.from_terms(p, n, terms.items())

    @classmethod
    def monomial(cls, p: int, exponent: Exponent) -> "PrimeFieldPoly":
        return cls.from_terms(p, len(exponent), [(exponent, 1)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def constant_term(self) -> int:
        zero = (0,) * self.n
        return next((c for m, c in self.terms if m == zero), 0)

    @property
    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def frobenius(self, q: int) -> "PrimeFieldPoly":
        """f^q for q a power of p: coefficients are fixed, exponents scale by q."""
        return PrimeFieldPoly(self.p, self.n, tuple((tuple(q * k for k in m), c) for m, c in self.terms))


@dataclass(frozen=True)
class PrimeFieldIdeal:
    p: int
    n: int
    polynomials: Tuple[PrimeFieldPoly, ...]

    def __post_init__(self):
        for f in self.polynomials:
            if f.p != self.p or f.n != self.n:
                raise DimensionMismatchError(
                    f"Polynomial over F_{f.p} in {f.n} variables added to an ideal of F_{self.p}[x_1..x_{self.n}]."
                )

    def __add__(self, other: "PrimeFieldIdeal") -> "PrimeFieldIdeal":
        return PrimeFieldIdeal(self.p, self.n, self.polynomials + other.polynomials)

    @classmethod
    def maximal(cls, p: int, n: int) -> "PrimeFieldIdeal":
        """(x_1, ..., x_n)"""
        return cls(p, n, tuple(
            PrimeFieldPoly.monomial(p, tuple(1 if i == j else 0 for j in range(n))) for i in range(n)
        ))


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis together with the leading monomial of each element."""
    p: int
    n: int
    order: MonomialOrder
    polynomials: Tuple[PrimeFieldPoly, ...]
    leading_monomials: Tuple[Exponent, ...]
