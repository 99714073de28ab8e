"""
models/toric.py — Cones, fans, torus-invariant divisors and semigroup rings.

Rays live in N = Z^d and are the inner normals of the dual cone; lattice
points of M = Z^d pair with them through ``<m, v_rho>``. These types carry
data only; geometric validation happens in ``services.toric_geometry``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from models.linalg import GroupElement, IntegerMatrix
from utils.errors import DimensionMismatchError

Vector = Tuple[int, ...]


def pairing(m: Vector, v: Vector) -> int:
    return sum(a * b for a, b in zip(m, v))


@dataclass(frozen=True)
class RayConfiguration:
    """Common part of cones and fans: a lattice rank and a list of rays."""
    lattice_rank: int
    rays: Tuple[Vector, ...]

    @property
    def ray_count(self) -> int:
        return len(self.rays)

    def pairing_matrix(self) -> IntegerMatrix:
        """One row per ray, one column per basis vector of M: the map M -> Z^rays."""
        return IntegerMatrix.from_rows(self.rays, cols=self.lattice_rank)

    def pairings(self, m: Vector) -> Vector:
        if len(m) != self.lattice_rank:
            raise DimensionMismatchError(
                f"Lattice point {m} has {len(m)} coordinates, expected {self.lattice_rank}."
            )
        return tuple(pairing(m, v) for v in self.rays)

    def contains_dual(self, m: Vector) -> bool:
        """Whether ``m`` lies in the dual cone (all pairings non-negative)."""
        return all(x >= 0 for x in self.pairings(m))


@dataclass(frozen=True)
class ConeData(RayConfiguration):
    """A strongly convex, full-dimensional rational polyhedral cone (affine toric ring)."""

    @property
    def kind(self) -> str:
        return "cone"


@dataclass(frozen=True)
class FanData(RayConfiguration):
    """A smooth fan; completeness is asserted by the caller (checked for d <= 2)."""
    maximal_cones: Tuple[Tuple[int, ...], ...] = ()
    complete: bool = True

    @property
    def kind(self) -> str:
        return "fan"


@dataclass(frozen=True)
class WeilDivisor:
    """Integer coefficients, one per ray: sum a_rho D_rho."""
    coefficients: Tuple[int, ...]

    def __add__(self, other: "WeilDivisor") -> "WeilDivisor":
        _check_same_length(self.coefficients, other.coefficients)
        return WeilDivisor(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "WeilDivisor":
        return WeilDivisor(tuple(-a for a in self.coefficients))

    def scale(self, k: int) -> "WeilDivisor":
        return WeilDivisor(tuple(k * a for a in self.coefficients))

    def to_rational(self) -> "QWeilDivisor":
        return QWeilDivisor(tuple(Fraction(a) for a in self.coefficients))


@dataclass(frozen=True)
class QWeilDivisor:
    """Rational coefficients, one per ray."""
    coefficients: Tuple[Fraction, ...]

    def __add__(self, other: "QWeilDivisor | WeilDivisor") -> "QWeilDivisor":
        _check_same_length(self.coefficients, other.coefficients)
        return QWeilDivisor(tuple(Fraction(a) + b for a, b in zip(self.coefficients, other.coefficients)))

    def scale(self, k: Fraction) -> "QWeilDivisor":
        return QWeilDivisor(tuple(k * a for a in self.coefficients))


@dataclass(frozen=True)
class DivisorClass:
    """The class of a Weil divisor in Cl (cone) or A_{d-1} (fan)."""
    element: GroupElement

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.element + other.element)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.element - other.element)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.element)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.element * k)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return self.element.is_zero

    @property
    def free(self) -> Tuple[int, ...]:
        return self.element.free

    @property
    def torsion(self) -> Tuple[int, ...]:
        return self.element.torsion

    def sort_key(self):
        return self.element.sort_key()


@dataclass(frozen=True)
class SemigroupRingSpec:
    """k[sigma^dual ∩ M] together with user-supplied semigroup generators."""
    cone: ConeData
    semigroup_generators: Tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return self.cone.lattice_rank


def _check_same_length(a: tuple, b: tuple) -> None:
    if len(a) != len(b):
        raise DimensionMismatchError(f"Divisors with {len(a)} and {len(b)} coefficients.")
