"""
services/frobenius.py — Toric decomposition of the Frobenius pushforward.

For a toric variety (or affine toric ring) with rays v_rho and q = p^e,

    F^e_* O(D) = sum_{s in [0, q)^d} O( floor((D + div(u^s)) / q) ),

where div(u^s) = sum_rho <s, v_rho> D_rho. The residue set is the half-open
box, which gives exactly q^d rank-one summands. Classes are tallied by a
map-reduce over chunks of residues; the result does not depend on how the
residues are chunked.
"""

import logging
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from models.frobenius import (
    FrobeniusDecomposition,
    Orientation,
    Summand,
    TauTop,
    VerificationReport,
)
from models.linalg import sum_elements
from models.toric import (
    ConeData,
    DivisorClass,
    FanData,
    RayConfiguration,
    Vector,
    WeilDivisor,
)
from services.linalg import determinant, is_torsion
from services.toric_geometry import canonical_class, class_group, divisor_class
from utils.errors import BudgetExceededError, DimensionMismatchError, InvalidFanError
from utils.numbers import frobenius_q
from utils.parallel import map_chunks, split_range
from utils.settings import settings

logger = logging.getLogger(__name__)

# divisor coefficients -> (count, first residue s)
_Tally = Dict[Tuple[int, ...], Tuple[int, Vector]]


# ── Enumeration kernel ─────────────────────────────────────────────────────────

def _tally_residues(
    rays: Tuple[Vector, ...],
    q: int,
    twist: Tuple[int, ...],
    first_coordinates: range,
) -> _Tally:
    """Tally floor((twist + <s, v>) / q) over s with s_1 in ``first_coordinates``."""
    d = len(rays[0])
    tally: _Tally = {}
    columns = list(zip(twist, rays))
    for s in product(first_coordinates, *([range(q)] * (d - 1))):
        key = tuple((t + sum(a * b for a, b in zip(s, v))) // q for t, v in columns)
        seen = tally.get(key)
        if seen is None:
            tally[key] = (1, s)
        else:
            tally[key] = (seen[0] + 1, seen[1])
    logger.debug("Residue chunk %s produced %d distinct divisors.", first_coordinates, len(tally))
    return tally


def _merge(tallies: Sequence[_Tally]) -> _Tally:
    merged: _Tally = {}
    for tally in tallies:  # chunks arrive in ascending s_1 order
        for key, (count, witness) in tally.items():
            seen = merged.get(key)
            merged[key] = (count, witness) if seen is None else (seen[0] + count, seen[1])
    return merged


def _decompose(
    cfg: RayConfiguration,
    p: int,
    e: int,
    twist: Optional[WeilDivisor],
    budget: Optional[int],
    workers: Optional[int],
) -> FrobeniusDecomposition:
    q = frobenius_q(p, e)
    d = cfg.lattice_rank
    budget = budget if budget is not None else settings.enumeration_budget
    workers = workers if workers is not None else settings.workers
    if q**d > budget:
        raise BudgetExceededError(
            f"Enumerating q^d = {q}^{d} = {q**d} residues exceeds the budget of {budget}."
        )
    if twist is not None and len(twist.coefficients) != cfg.ray_count:
        raise DimensionMismatchError(
            f"Twist has {len(twist.coefficients)} coefficients, expected {cfg.ray_count}."
        )
    twist_coeffs = twist.coefficients if twist is not None else (0,) * cfg.ray_count

    kernel = partial(_tally_residues, cfg.rays, q, twist_coeffs)
    tally = _merge(map_chunks(kernel, split_range(q, workers), workers))

    # Several divisors may share a class; keep the smallest residue as witness.
    by_class: Dict[DivisorClass, List] = {}
    for key in sorted(tally, key=lambda k: tally[k][1]):
        count, witness = tally[key]
        cls = divisor_class(cfg, WeilDivisor(key))
        if cls in by_class:
            by_class[cls][0] += count
        else:
            by_class[cls] = [count, witness, WeilDivisor(key)]

    summands = tuple(
        Summand(divisor_class=cls, multiplicity=count, witness_s=witness, witness_divisor=divisor)
        for cls, (count, witness, divisor) in sorted(by_class.items(), key=lambda kv: kv[0].sort_key())
    )
    logger.info(
        "Decomposed F^%d_* (p=%d) over %d rays into %d classes (%d divisors).",
        e, p, cfg.ray_count, len(summands), len(tally),
    )
    return FrobeniusDecomposition(p=p, e=e, q=q, source=cfg, summands=summands, twist=twist)


# ── Decompositions ─────────────────────────────────────────────────────────────

def frobenius_decompose_affine(
    cone: ConeData,
    p: int,
    e: int,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> FrobeniusDecomposition:
    """
    Classes of the rank-one summands of ^eA for A = k[sigma^dual ∩ M].

    Args:
        cone:     A validated, full-dimensional, strongly convex cone.
        p:        The characteristic (prime).
        e:        Frobenius exponent, at least 1.
        budget:   Cap on the q^d residues enumerated (settings default).
        workers:  Worker processes for the residue scan (settings default).

    Returns:
        A FrobeniusDecomposition of rank q^d, summands sorted by class.
    """
    return _decompose(cone, p, e, None, budget, workers)


def frobenius_decompose_projective(
    fan: FanData,
    p: int,
    e: int,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> FrobeniusDecomposition:
    """Line-bundle summands of F^e_* O_X over A_{d-1}(X); the fan must be smooth."""
    _require_smooth(fan)
    return _decompose(fan, p, e, None, budget, workers)


def frobenius_pushforward_twist(
    cfg: RayConfiguration,
    divisor: WeilDivisor,
    p: int,
    e: int = 1,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> FrobeniusDecomposition:
    """F^e_* O(D) for a torus-invariant Weil divisor D."""
    return _decompose(cfg, p, e, divisor, budget, workers)


def compose_decomposition(
    dec: FrobeniusDecomposition,
    budget: Optional[int] = None,
) -> FrobeniusDecomposition:
    """
    F_*(F^e_* O(D)) computed summand by summand: applies the e=1 twisted
    pushforward to every witness divisor and tallies. Equals the direct
    decomposition at e+1.
    """
    cfg, p, q = dec.source, dec.p, dec.q
    totals: Dict[DivisorClass, List] = {}
    for summand in dec.summands:
        inner = frobenius_pushforward_twist(cfg, summand.witness_divisor, p, 1, budget=budget, workers=1)
        for block in inner.summands:
            count = summand.multiplicity * block.multiplicity
            if block.divisor_class in totals:
                totals[block.divisor_class][0] += count
                continue
            # residue s + q*t realises the same divisor at level e+1
            witness = tuple(s + q * t for s, t in zip(summand.witness_s, block.witness_s))
            totals[block.divisor_class] = [count, witness, block.witness_divisor]

    summands = tuple(
        Summand(divisor_class=cls, multiplicity=count, witness_s=witness, witness_divisor=divisor)
        for cls, (count, witness, divisor) in sorted(totals.items(), key=lambda kv: kv[0].sort_key())
    )
    return FrobeniusDecomposition(
        p=p, e=dec.e + 1, q=q * p, source=cfg, summands=summands, twist=dec.twist,
    )


def class_sum(dec: FrobeniusDecomposition) -> DivisorClass:
    """sum multiplicity * class: cl(^eA), or c_1(F^e_* O_X) for a smooth fan."""
    group = class_group(dec.source)
    return DivisorClass(sum_elements(group, ((s.divisor_class.element, s.multiplicity) for s in dec.summands)))


# ── Theorem checks ─────────────────────────────────────────────────────────────

def _compare(
    theorem: str,
    cfg: RayConfiguration,
    dec: FrobeniusDecomposition,
    orientation: Orientation,
    exact: bool,
) -> VerificationReport:
    d, q = cfg.lattice_rank, dec.q
    total = class_sum(dec)
    if orientation == Orientation.SIGN_FLIPPED:
        total = -total
    lhs = total * 2
    rhs = canonical_class(cfg) * (q**d - q ** (d - 1))
    difference = lhs - rhs
    torsion = is_torsion(difference.element)
    return VerificationReport(
        theorem=theorem,
        p=dec.p,
        e=dec.e,
        lhs=lhs,
        rhs=rhs,
        difference=difference,
        torsion_flag=torsion,
        passed=difference.is_zero if exact else torsion,
        orientation_used=orientation,
    )


def _verify(
    theorem: str,
    cfg: RayConfiguration,
    dec: FrobeniusDecomposition,
    orientation: Optional[Orientation],
    exact: bool,
) -> VerificationReport:
    if orientation is not None:
        return _compare(theorem, cfg, dec, orientation, exact)

    report = _compare(theorem, cfg, dec, Orientation.AS_STATED, exact)
    if report.passed:
        return report
    flipped = _compare(theorem, cfg, dec, Orientation.SIGN_FLIPPED, exact)
    if flipped.passed:
        logger.warning("%s holds only in the sign-flipped orientation (p=%d, e=%d).", theorem, dec.p, dec.e)
        return flipped
    logger.warning("%s fails in both orientations (p=%d, e=%d).", theorem, dec.p, dec.e)
    return report


def verify_theorem_main(
    cone: ConeData,
    p: int,
    e: int,
    orientation: Optional[Orientation] = None,
    decomposition: Optional[FrobeniusDecomposition] = None,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> VerificationReport:
    """
    cl(^eA) = (q^d - q^(d-1))/2 * cl(omega_A) in Cl(A)_Q, checked as
    "2 * class_sum - (q^d - q^(d-1)) * K is torsion".

    ``orientation=None`` tries the stated orientation first and falls back
    to the sign-flipped one; the report records which was used.
    """
    dec = decomposition or frobenius_decompose_affine(cone, p, e, budget=budget, workers=workers)
    return _verify("cl(^eA) = (p^de - p^(d-1)e)/2 cl(omega_A)", cone, dec, orientation, exact=False)


def verify_theorem_analogue(
    fan: FanData,
    p: int,
    e: int,
    orientation: Optional[Orientation] = None,
    decomposition: Optional[FrobeniusDecomposition] = None,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> VerificationReport:
    """c_1(F^e_* O_X) = (q^d - q^(d-1))/2 * K_X, exactly (Pic of a smooth complete toric X is free)."""
    if not fan.complete:
        raise InvalidFanError("The c_1 identity is checked on complete fans only.")
    dec = decomposition or frobenius_decompose_projective(fan, p, e, budget=budget, workers=workers)
    return _verify("c1(F^e_* O_X) = (p^de - p^(d-1)e)/2 K_X", fan, dec, orientation, exact=True)


# ── Codimension-one Riemann-Roch component ─────────────────────────────────────

def tau_top(cfg: RayConfiguration, m_class: DivisorClass, rank: int) -> TauTop:
    """
    -cl(M) + (rank/2) * cl(omega) on free coordinates. Torsion is invisible
    after tensoring with Q, which ``torsion_ambiguous`` records.
    """
    k = canonical_class(cfg)
    half_rank = Fraction(rank, 2)
    free = tuple(-Fraction(a) + half_rank * c for a, c in zip(m_class.free, k.free))
    return TauTop(free_part=free, torsion_ambiguous=bool(class_group(cfg).torsion_invariants))


def check_tau_identities(cfg: RayConfiguration, dec: FrobeniusDecomposition) -> bool:
    """
    tau([A]) = cl(omega)/2 and tau([^eA]) = q^(d-1) * tau([A]) on free
    coordinates, the latter evaluated through ``dec``.
    """
    d, q = cfg.lattice_rank, dec.q
    k_free = canonical_class(cfg).free
    zero = DivisorClass(class_group(cfg).zero())
    of_ring = tau_top(cfg, zero, 1).free_part
    of_pushforward = tau_top(cfg, class_sum(dec), dec.rank).free_part
    return (
        of_ring == tuple(Fraction(c, 2) for c in k_free)
        and of_pushforward == tuple(Fraction(q ** (d - 1), 2) * c for c in k_free)
    )


def _require_smooth(fan: FanData) -> None:
    for cone in fan.maximal_cones:
        if len(cone) != fan.lattice_rank or abs(determinant([fan.rays[i] for i in cone])) != 1:
            raise InvalidFanError(f"Maximal cone {list(cone)} is not smooth; summands would not be line bundles.")
