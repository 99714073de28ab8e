"""
models/frobenius.py — Frobenius pushforward decompositions and verification reports.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from models.toric import DivisorClass, RayConfiguration, Vector, WeilDivisor


class Orientation(str, Enum):
    """How a summand O(D) is turned into a class for the theorem checks."""
    AS_STATED = "as-stated"        # class of the rounded-down divisor D
    SIGN_FLIPPED = "sign-flipped"  # class of -D (divisorial-ideal orientation)


@dataclass(frozen=True)
class Summand:
    """One isotypic block O(D)^{multiplicity} of the pushforward."""
    divisor_class: DivisorClass
    multiplicity: int
    witness_s: Vector             # smallest residue s producing this class
    witness_divisor: WeilDivisor  # floor((twist + div(u^s)) / q)


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """
    F^e_* O(twist) = sum over s in [0, q)^d of O(floor((twist + div(u^s)) / q)),
    tallied by divisor class. Summands are sorted by class.
    """
    p: int
    e: int
    q: int
    source: RayConfiguration
    summands: Tuple[Summand, ...]
    twist: Optional[WeilDivisor] = None

    @property
    def rank(self) -> int:
        return sum(s.multiplicity for s in self.summands)

    def multiplicities(self) -> Dict[DivisorClass, int]:
        return {s.divisor_class: s.multiplicity for s in self.summands}

    def multiplicity_of(self, cls: DivisorClass) -> int:
        return self.multiplicities().get(cls, 0)


@dataclass(frozen=True)
class VerificationReport:
    """
    Outcome of 2*sum(classes) == (q^d - q^(d-1)) * K.

    ``passed`` means the difference is torsion (affine case, equality in
    Cl_Q) or exactly zero (smooth projective case).
    """
    theorem: str
    p: int
    e: int
    lhs: DivisorClass
    rhs: DivisorClass
    difference: DivisorClass
    torsion_flag: bool
    passed: bool
    orientation_used: Orientation


@dataclass(frozen=True)
class TauTop:
    """
    A value of the codimension-one Riemann-Roch component in Cl(A)_Q:
    only the free coordinates survive tensoring with Q.
    """
    free_part: Tuple[Fraction, ...]
    torsion_ambiguous: bool


@dataclass(frozen=True)
class ChernComparison:
    """A Chern number of F^e_* O_{P^n} from the decomposition and from the closed form."""
    n: int
    p: int
    e: int
    from_decomposition: Fraction
    closed_form: Fraction

    @property
    def agrees(self) -> bool:
        return self.from_decomposition == self.closed_form
