"""
models/hilbert_kunz.py — Monomial ideals, Hilbert-Kunz samples and estimates.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from models.toric import SemigroupRingSpec, Vector


@dataclass(frozen=True)
class MonomialIdealSpec:
    """An ideal of k[sigma^dual ∩ M] generated by the monomials chi^g, g in ``generators``."""
    ring: SemigroupRingSpec
    generators: Tuple[Vector, ...]


@dataclass(frozen=True)
class HKSample:
    e: int
    q: int
    length: int


@dataclass(frozen=True)
class PairEstimate:
    """Exact solve of a*q^d + b*q^(d-1) = length through two consecutive samples."""
    e_low: int
    e_high: int
    q_low: int
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class HKEstimate:
    """
    Two-point estimates of e_HK and beta for every adjacent pair of samples;
    the final estimate is the last pair. ``residuals`` are
    length - (a*q^d + b*q^(d-1)) per sample under the final pair.
    """
    d: int
    pairs: Tuple[PairEstimate, ...]
    e_hk: Fraction
    beta: Fraction
    residuals: Tuple[Tuple[int, Fraction], ...]
