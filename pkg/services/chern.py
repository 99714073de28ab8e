"""
services/chern.py — Chern data of F^e_* O on projective space.

A_*(P^n) = Z[h]/(h^(n+1)). F^e_* O_{P^n} splits into line bundles O(a_i),
so its total Chern class is prod (1 + a_i h) and every Chern number is an
elementary symmetric function of the degrees a_i.
"""

import logging
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Tuple

from models.frobenius import ChernComparison, FrobeniusDecomposition
from services.frobenius import frobenius_decompose_projective
from services.toric_geometry import projective_degree, projective_space_fan
from utils.errors import InputError
from utils.numbers import frobenius_q

logger = logging.getLogger(__name__)


def summand_degrees(dec: FrobeniusDecomposition) -> Dict[int, int]:
    """degree -> multiplicity for a decomposition over a fan with A_{d-1} = Z."""
    degrees: Dict[int, int] = {}
    for summand in dec.summands:
        a = projective_degree(dec.source, summand.divisor_class)
        degrees[a] = degrees.get(a, 0) + summand.multiplicity
    return dict(sorted(degrees.items()))


def total_chern_class(degrees: Dict[int, int], n: int) -> Tuple[int, ...]:
    """Coefficients c_0..c_n of prod_a (1 + a h)^mult modulo h^(n+1)."""
    coeffs: List[int] = [1] + [0] * n
    for a, mult in degrees.items():
        factor = [comb(mult, k) * a**k for k in range(n + 1)]
        coeffs = [sum(coeffs[i] * factor[k - i] for i in range(k + 1)) for k in range(n + 1)]
    return tuple(coeffs)


def _degrees_pn(
    n: int, p: int, e: int, budget: Optional[int], decomposition: Optional[FrobeniusDecomposition],
) -> Dict[int, int]:
    if decomposition is not None:
        if (decomposition.source.lattice_rank, decomposition.p, decomposition.e) != (n, p, e):
            raise InputError(
                f"Decomposition is for rank {decomposition.source.lattice_rank}, p={decomposition.p}, "
                f"e={decomposition.e}; expected P^{n} at p={p}, e={e}."
            )
        return summand_degrees(decomposition)
    return summand_degrees(frobenius_decompose_projective(projective_space_fan(n), p, e, budget=budget))


def c1_projective_space(
    n: int,
    p: int,
    e: int,
    budget: Optional[int] = None,
    decomposition: Optional[FrobeniusDecomposition] = None,
) -> ChernComparison:
    """c_1 as a degree; the closed form is (q^n - q^(n-1))/2 * K with K = -(n+1)."""
    if n < 1:
        raise InputError(f"c_1 needs n >= 1, got {n}.")
    q = frobenius_q(p, e)
    c1 = total_chern_class(_degrees_pn(n, p, e, budget, decomposition), n)[1]
    closed = Fraction(q**n - q ** (n - 1), 2) * -(n + 1)
    return ChernComparison(n=n, p=p, e=e, from_decomposition=Fraction(c1), closed_form=closed)


def c2_closed_form(n: int, q: int) -> Fraction:
    """
    [(3Q^2 - 6QQ' + 3Q'^2 - 4Q + 6Q' - 2Q'')/24] K^2 + [(Q - Q'')/12] c_2(T)
    with Q = q^n, Q' = q^(n-1), Q'' = q^(n-2), K^2 = (n+1)^2 and
    c_2(T) = n(n+1)/2 read off (1 + h)^(n+1).
    """
    big, mid, low = q**n, q ** (n - 1), q ** (n - 2)
    k_squared = (n + 1) ** 2
    c2_tangent = comb(n + 1, 2)
    k_part = Fraction(3 * big**2 - 6 * big * mid + 3 * mid**2 - 4 * big + 6 * mid - 2 * low, 24)
    return k_part * k_squared + Fraction(big - low, 12) * c2_tangent


def c2_projective_space(
    n: int,
    p: int,
    e: int,
    budget: Optional[int] = None,
    decomposition: Optional[FrobeniusDecomposition] = None,
) -> ChernComparison:
    """
    c_2(F^e_* O_{P^n}) from the line-bundle degrees and from the closed form.

    Args:
        n:              Dimension of the projective space, at least 2.
        p, e:           Characteristic and Frobenius exponent.
        budget:         Residue enumeration budget when decomposing here.
        decomposition:  An existing decomposition of F^e_* O_{P^n}, reused as is.

    Returns:
        A ChernComparison; ``agrees`` tells whether both values match.
    """
    if n < 2:
        raise InputError(f"c_2 needs n >= 2, got {n}.")
    q = frobenius_q(p, e)
    c2 = total_chern_class(_degrees_pn(n, p, e, budget, decomposition), n)[2]
    result = ChernComparison(n=n, p=p, e=e, from_decomposition=Fraction(c2), closed_form=c2_closed_form(n, q))
    if not result.agrees:
        logger.warning("c_2 mismatch on P^%d at p=%d, e=%d: %s vs %s.", n, p, e, c2, result.closed_form)
    return result


def hilbert_polynomial_value(a: int, n: int) -> Fraction:
    """chi(O_{P^n}(a)) = (a+1)(a+2)...(a+n)/n!, valid for negative a too."""
    num = 1
    for i in range(1, n + 1):
        num *= a + i
    return Fraction(num, factorial(n))


def euler_characteristic_projective(dec: FrobeniusDecomposition) -> Fraction:
    """sum multiplicity * chi(O(a)); always equals chi(O_{P^n}) = 1."""
    n = dec.source.lattice_rank
    return sum(
        (mult * hilbert_polynomial_value(a, n) for a, mult in summand_degrees(dec).items()),
        Fraction(0),
    )
