"""
services/hilbert_kunz.py — Hilbert-Kunz lengths over semigroup rings and e_HK / beta estimates.

Lattice points are handled in pairing coordinates m -> (<m, v_rho>)_rho.
The rays span Q^d, so this map is injective, and membership of m in a
monomial ideal (g_j) is "pairings(m) >= pairings(g_j) componentwise for
some j".
"""

import logging
import math
from fractions import Fraction
from functools import singledispatch
from itertools import combinations, product
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from models.hilbert_kunz import HKEstimate, HKSample, MonomialIdealSpec, PairEstimate
from models.polynomial import PrimeFieldIdeal, PrimeFieldPoly
from models.toric import SemigroupRingSpec, Vector, WeilDivisor, pairing
from services.linalg import determinant, solve_rational
from utils.errors import BudgetExceededError, DimensionMismatchError, InputError, NotMPrimaryError
from utils.numbers import Rational, frobenius_q, parse_integer
from utils.settings import settings

logger = logging.getLogger(__name__)


# ── Monomial ideals ────────────────────────────────────────────────────────────

def build_monomial_ideal(ring: SemigroupRingSpec, generators: Sequence[Sequence[int]]) -> MonomialIdealSpec:
    """
    Validate generators of a monomial ideal of ``ring``.

    Args:
        ring:        The semigroup ring the ideal lives in.
        generators:  Lattice points of sigma^dual ∩ M; entries are ints or decimal strings.

    Returns:
        A MonomialIdealSpec with the generators as integer tuples.
    """
    gens = tuple(tuple(parse_integer(x) for x in g) for g in generators)
    if not gens:
        raise InputError("A monomial ideal needs at least one generator.")
    for g in gens:
        if len(g) != ring.dimension:
            raise InputError(f"Ideal generator {g} has {len(g)} coordinates, expected {ring.dimension}.")
        if not ring.cone.contains_dual(g):
            raise InputError(f"Ideal generator {g} does not lie in the dual cone.")
    return MonomialIdealSpec(ring=ring, generators=gens)


def maximal_ideal(ring: SemigroupRingSpec) -> MonomialIdealSpec:
    """The homogeneous maximal ideal, generated by the semigroup generators."""
    return MonomialIdealSpec(ring=ring, generators=ring.semigroup_generators)


def _dominates(w: Sequence[int], target: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(w, target))


def certify_m_primary(ideal: MonomialIdealSpec, k_max: Optional[int] = None) -> Tuple[int, ...]:
    """
    For every semigroup generator a_i the least k_i <= k_max with
    k_i * a_i in the ideal. Raises NotMPrimaryError when some k_i is missing.
    """
    k_max = k_max if k_max is not None else settings.k_max
    cone = ideal.ring.cone
    targets = [cone.pairings(g) for g in ideal.generators]
    ks = []
    for a in ideal.ring.semigroup_generators:
        w = cone.pairings(a)
        k = next(
            (k for k in range(1, k_max + 1) if any(_dominates([k * x for x in w], t) for t in targets)),
            None,
        )
        if k is None:
            raise NotMPrimaryError(
                f"No power k <= {k_max} of the monomial {a} lies in the ideal; it is not m-primary."
            )
        ks.append(k)
    return tuple(ks)


# ── Frobenius powers ───────────────────────────────────────────────────────────

@singledispatch
def frobenius_power(ideal, q: int):
    """I^[q] = (a^q | a in I)."""
    raise InputError(f"Cannot take the Frobenius power of {type(ideal).__name__}.")


@frobenius_power.register
def _(ideal: MonomialIdealSpec, q: int) -> MonomialIdealSpec:
    return MonomialIdealSpec(ring=ideal.ring, generators=tuple(tuple(q * x for x in g) for g in ideal.generators))


@frobenius_power.register
def _(f: PrimeFieldPoly, q: int) -> PrimeFieldPoly:
    _require_power_of(f.p, q)
    return f.frobenius(q)


@frobenius_power.register
def _(ideal: PrimeFieldIdeal, q: int) -> PrimeFieldIdeal:
    _require_power_of(ideal.p, q)
    return PrimeFieldIdeal(ideal.p, ideal.n, tuple(f.frobenius(q) for f in ideal.polynomials))


def _require_power_of(p: int, q: int) -> None:
    k = q
    while k % p == 0 and k > 1:
        k //= p
    if q < 1 or k != 1:
        raise InputError(f"Frobenius power exponent {q} is not a power of the characteristic {p}.")


# ── Toric engine ───────────────────────────────────────────────────────────────

def _steps_until_member(w: Vector, a: Vector, targets: List[Vector]) -> Optional[int]:
    """Least c >= 0 with w + c*a in the ideal spanned by ``targets``, or None."""
    best = None
    for t in targets:
        need = 0
        for wk, ak, tk in zip(w, a, t):
            if wk >= tk:
                continue
            if ak <= 0:
                break
            need = max(need, -((wk - tk) // ak))
        else:
            best = need if best is None else min(best, need)
    return best


def _grow_outside(
    starts: Iterable[Vector],
    steps: Sequence[Tuple[Vector, int]],
    targets: List[Vector],
    budget: int,
) -> Set[Vector]:
    """
    All w = start + sum c_i * a_i with c_i < cap_i that stay outside the
    ideal spanned by ``targets``. Sums are built one step at a time and a
    partial sum that enters the ideal is dropped, since the ideal (or
    submodule) is closed under adding semigroup elements.
    """
    points: Set[Vector] = set(starts)
    for index, (a, cap) in enumerate(steps):
        grown: Set[Vector] = set()
        for w in points:
            stop = _steps_until_member(w, a, targets)
            for c in range(cap if stop is None else min(cap, stop)):
                grown.add(tuple(x + c * y for x, y in zip(w, a)))
        points = grown
        if len(points) > budget:
            raise BudgetExceededError(
                f"Lattice enumeration reached {len(points)} points, over the budget of {budget}."
            )
        logger.debug("After generator %d: %d points outside.", index, len(points))
    return points


def hk_length_toric(
    ideal: MonomialIdealSpec,
    p: int,
    e: int,
    budget: Optional[int] = None,
    k_max: Optional[int] = None,
) -> int:
    """
    l(A / I^[q]) = #{m in the semigroup : m not in I^[q]}.

    Every such m is a sum of c_i * a_i with c_i < q*k_i (a coefficient of
    q*k_i or more already lands in I^[q]).
    """
    q = frobenius_q(p, e)
    budget = budget if budget is not None else settings.enumeration_budget
    ks = certify_m_primary(ideal, k_max)
    cone = ideal.ring.cone
    targets = [tuple(q * x for x in cone.pairings(g)) for g in ideal.generators]
    zero: Vector = (0,) * cone.ray_count
    if _steps_until_member(zero, zero, targets) == 0:
        return 0

    steps = [(cone.pairings(a), q * k) for a, k in zip(ideal.ring.semigroup_generators, ks)]
    length = len(_grow_outside([zero], steps, targets, budget))
    logger.info("Toric HK length at p=%d, e=%d: %d.", p, e, length)
    return length


def hk_samples_toric(ideal: MonomialIdealSpec, p: int, e_values: Sequence[int], **kwargs) -> List[HKSample]:
    return [HKSample(e=e, q=frobenius_q(p, e), length=hk_length_toric(ideal, p, e, **kwargs)) for e in e_values]


# ── Divisorial modules ─────────────────────────────────────────────────────────

def _module_generators(ring: SemigroupRingSpec, shift: Vector, budget: int) -> List[Vector]:
    """
    Lattice points of P_D = {m : <m, v_rho> >= -a_rho} inside
    conv(vertices of P_D) + sum_i [0, 1] a_i. P_D is that polytope plus
    the dual cone, so every lattice point of P_D is one of these plus a
    semigroup element.
    """
    cone = ring.cone
    d = cone.lattice_rank
    vertices = []
    for idx in combinations(range(cone.ray_count), d):
        rows = [cone.rays[i] for i in idx]
        if determinant(rows) == 0:
            continue
        x = solve_rational(rows, [-shift[i] for i in idx])
        if all(pairing(x, v) >= -a for v, a in zip(cone.rays, shift)):
            vertices.append(x)

    ranges = []
    box = 1
    for k in range(d):
        low = math.floor(min(x[k] for x in vertices)) + sum(min(0, g[k]) for g in ring.semigroup_generators)
        high = math.ceil(max(x[k] for x in vertices)) + sum(max(0, g[k]) for g in ring.semigroup_generators)
        ranges.append(range(low, high + 1))
        box *= high - low + 1
    if box > budget:
        raise BudgetExceededError(f"Module generator box of {box} lattice points exceeds the budget of {budget}.")
    return [
        m for m in product(*ranges)
        if all(w >= -a for w, a in zip(cone.pairings(m), shift))
    ]


def hk_length_divisorial(
    ideal: MonomialIdealSpec,
    divisor: WeilDivisor,
    p: int,
    e: int,
    budget: Optional[int] = None,
    k_max: Optional[int] = None,
) -> int:
    """
    l(M / I^[q] M) for the rank-one reflexive module M = O(D).

    M has basis chi^m over the lattice points of P_D = {m : <m, v_rho> >= -a_rho},
    and I^[q] M has basis over the union of q*g_j + P_D. In shifted pairing
    coordinates u = (<m, v_rho> + a_rho)_rho both conditions read exactly as
    for the ring, so the count starts from the module generators instead of 0.

    Args:
        ideal:    An m-primary monomial ideal of the semigroup ring.
        divisor:  D = sum a_rho D_rho, one coefficient per ray of the ring's cone.
        p, e:     The characteristic and the Frobenius exponent, q = p^e.
        budget:   Cap on enumerated lattice points (settings default).
        k_max:    Search bound of the m-primary certificate (settings default).

    Returns:
        The length as an exact integer. D = 0 gives ``hk_length_toric``.
    """
    q = frobenius_q(p, e)
    budget = budget if budget is not None else settings.enumeration_budget
    cone = ideal.ring.cone
    shift = tuple(divisor.coefficients)
    if len(shift) != cone.ray_count:
        raise DimensionMismatchError(f"Divisor has {len(shift)} coefficients, expected {cone.ray_count}.")
    ks = certify_m_primary(ideal, k_max)
    targets = [tuple(q * x for x in cone.pairings(g)) for g in ideal.generators]
    zero: Vector = (0,) * cone.ray_count

    starts = set()
    for m in _module_generators(ideal.ring, shift, budget):
        u = tuple(w + a for w, a in zip(cone.pairings(m), shift))
        if _steps_until_member(u, zero, targets) is None:
            starts.add(u)
    logger.debug("O(D) for D=%s: %d generator candidates outside I^[%d] M.", shift, len(starts), q)

    steps = [(cone.pairings(a), q * k) for a, k in zip(ideal.ring.semigroup_generators, ks)]
    length = len(_grow_outside(starts, steps, targets, budget))
    logger.info("Divisorial HK length at p=%d, e=%d, D=%s: %d.", p, e, shift, length)
    return length


def hk_samples_divisorial(
    ideal: MonomialIdealSpec, divisor: WeilDivisor, p: int, e_values: Sequence[int], **kwargs
) -> List[HKSample]:
    return [
        HKSample(e=e, q=frobenius_q(p, e), length=hk_length_divisorial(ideal, divisor, p, e, **kwargs))
        for e in e_values
    ]


# ── Estimates ──────────────────────────────────────────────────────────────────

def _solve_pair(low: HKSample, high: HKSample, d: int) -> PairEstimate:
    q1, q2, l1, l2 = low.q, high.q, low.length, high.length
    det = q1 ** (d - 1) * q2 ** (d - 1) * (q1 - q2)
    if det == 0:
        raise InputError(f"Samples at q={q1} and q={q2} give a singular system.")
    a = Fraction(l1 * q2 ** (d - 1) - l2 * q1 ** (d - 1), det)
    b = Fraction(q1**d * l2 - q2**d * l1, det)
    return PairEstimate(e_low=low.e, e_high=high.e, q_low=q1, a=a, b=b)


def estimate_ehk_beta(samples: Sequence[HKSample], d: int) -> HKEstimate:
    """
    Two-point solves of a*q^d + b*q^(d-1) = length over consecutive samples.

    The remainder of the Hilbert-Kunz expansion is O(q^(d-2)), so b_e is
    within O(1/q) of beta; exact rationals throughout.

    Args:
        samples:  At least two samples at consecutive e, in any order.
        d:        Krull dimension of the ring.

    Returns:
        An HKEstimate whose e_hk and beta come from the last pair, with
        every pair and the residuals of all samples against it.
    """
    if d < 1:
        raise InputError(f"Dimension must be >= 1, got {d}.")
    ordered = sorted(samples, key=lambda s: s.e)
    if len(ordered) < 2:
        raise InputError("At least two samples are needed for an estimate.")
    for low, high in zip(ordered, ordered[1:]):
        if high.e != low.e + 1:
            raise InputError(f"Samples must be at consecutive e; got e={low.e} then e={high.e}.")

    pairs = tuple(_solve_pair(low, high, d) for low, high in zip(ordered, ordered[1:]))
    final = pairs[-1]
    residuals = tuple(
        (s.e, s.length - final.a * s.q**d - final.b * s.q ** (d - 1)) for s in ordered
    )
    return HKEstimate(d=d, pairs=pairs, e_hk=final.a, beta=final.b, residuals=residuals)


# ── Closed forms ───────────────────────────────────────────────────────────────

ClosedForm = List[Tuple[Fraction, int]]


def evaluate_closed_form(terms: Sequence[Tuple[Rational, int]], e: int) -> Fraction:
    """sum c_i * r_i^e, exact."""
    return sum((Fraction(c) * Fraction(r) ** e for c, r in terms), Fraction(0))


def segre_2x3_closed_form(p: int) -> ClosedForm:
    """(13 q^4 - 2 q^3 - q^2 - 2 q) / 8 for the cone over P^1 x P^2, I = m."""
    return [
        (Fraction(13, 8), p**4),
        (Fraction(-2, 8), p**3),
        (Fraction(-1, 8), p**2),
        (Fraction(-2, 8), p),
    ]


def segre_2x3_module_closed_form(p: int, shift: int) -> ClosedForm:
    """
    l(M / m^[q] M) for M = O(D) on the cone over P^1 x P^2, q >= 2.

    Cl = Z with the two P^1 rays in class +1 and the three P^2 rays in
    class -1; the length only depends on shift = cl(D), given here for
    shift in {-1, 0, 1} (the primes (x_1 y_j) and (x_i y_1) and A itself).
    """
    coefficients = {
        -1: (13, -6, 11, 6),
        0: (13, -2, -1, -2),
        1: (13, 2, -1, 2),
    }
    if shift not in coefficients:
        raise InputError(f"Closed form is known for shift -1, 0 or 1, got {shift}.")
    return [(Fraction(c, 8), p**k) for c, k in zip(coefficients[shift], (4, 3, 2, 1))]


def han_monsky_closed_form() -> ClosedForm:
    """(168/61) 125^e - (107/61) 3^e for x1^4 + x2^4 + x3^4 + x4^4 over F_5."""
    return [(Fraction(168, 61), 125), (Fraction(-107, 61), 3)]


def veronese_closed_form(p: int) -> ClosedForm:
    """k[x^2, xy, y^2], I = m: (3q^2 - 1)/2 for odd p, 3q^2/2 for p = 2."""
    if p == 2:
        return [(Fraction(3, 2), 4)]
    return [(Fraction(3, 2), p**2), (Fraction(-1, 2), 1)]
