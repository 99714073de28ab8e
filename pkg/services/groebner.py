"""
services/groebner.py — Lengths of zero-dimensional quotients of F_p[x_1..x_n].

Two engines:
    * reduced Gröbner bases (sympy, Buchberger over GF(p)) followed by a
      count of standard monomials;
    * for principal ideals modulo (x_i^q), the rank of multiplication by f on
      the monomial box, split into independent blocks.
"""

import logging
from functools import partial
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.polys.orderings import monomial_key

from models.polynomial import Exponent, GroebnerBasis, MonomialOrder, PrimeFieldIdeal, PrimeFieldPoly
from services.hilbert_kunz import frobenius_power
from services.linalg import rank_mod_p
from utils.errors import BudgetExceededError, InputError, NotZeroDimensionalError
from utils.numbers import frobenius_q, require_prime
from utils.parallel import map_chunks, split_range
from utils.settings import settings

logger = logging.getLogger(__name__)


# ── Gröbner engine ─────────────────────────────────────────────────────────────

def _generators(n: int) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.symbols(f"x1:{n + 1}"))


def _to_expr(f: PrimeFieldPoly, gens: Sequence[sympy.Symbol]) -> sympy.Expr:
    return sympy.Add(*(c * sympy.Mul(*(g**k for g, k in zip(gens, m))) for m, c in f.terms))


def groebner_basis(ideal: PrimeFieldIdeal, order: MonomialOrder = MonomialOrder.GREVLEX) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` with respect to ``order``."""
    p, n = require_prime(ideal.p), ideal.n
    order = MonomialOrder(order)
    polys = [f for f in ideal.polynomials if not f.is_zero]
    if not polys:
        return GroebnerBasis(p=p, n=n, order=order, polynomials=(), leading_monomials=())

    gens = _generators(n)
    basis = sympy.groebner(
        [_to_expr(f, gens) for f in polys], *gens, order=order.value, modulus=p, method="buchberger",
    )
    key = monomial_key(order.value)
    elements: List[PrimeFieldPoly] = []
    leading: List[Exponent] = []
    for g in basis.polys:
        f = PrimeFieldPoly.from_terms(p, n, ((m, int(c) % p) for m, c in g.terms()))
        elements.append(f)
        leading.append(max((m for m, _ in f.terms), key=key))
    logger.debug("Gröbner basis over F_%d (%s): %d elements.", p, order.value, len(elements))
    return GroebnerBasis(p=p, n=n, order=order, polynomials=tuple(elements), leading_monomials=tuple(leading))


def standard_monomial_count(basis: GroebnerBasis, budget: Optional[int] = None) -> int:
    """Number of monomials outside the leading-term ideal; requires a zero-dimensional ideal."""
    n = basis.n
    if any(not any(m) for m in basis.leading_monomials):
        return 0  # unit ideal

    bounds = []
    for i in range(n):
        powers = [m[i] for m in basis.leading_monomials if m[i] and not any(m[:i] + m[i + 1:])]
        if not powers:
            raise NotZeroDimensionalError(
                f"No leading term is a pure power of x{i + 1}; the quotient is infinite-dimensional."
            )
        bounds.append(min(powers))

    budget = budget if budget is not None else settings.enumeration_budget
    box = 1
    for b in bounds:
        box *= b
    if box > budget:
        raise BudgetExceededError(f"Staircase box of {box} monomials exceeds the budget of {budget}.")

    leading = basis.leading_monomials
    return sum(
        1
        for m in product(*(range(b) for b in bounds))
        if not any(all(a >= b for a, b in zip(m, lm)) for lm in leading)
    )


def hk_length_groebner(
    ring_ideal: PrimeFieldIdeal,
    e: int,
    ideal: Optional[PrimeFieldIdeal] = None,
    order: MonomialOrder = MonomialOrder.GREVLEX,
) -> int:
    """dim F_p[x] / (J + I^[q]) with I the ideal of the variables unless given."""
    q = frobenius_q(ring_ideal.p, e)
    ideal = ideal if ideal is not None else PrimeFieldIdeal.maximal(ring_ideal.p, ring_ideal.n)
    length = standard_monomial_count(groebner_basis(ring_ideal + frobenius_power(ideal, q), order))
    logger.info("Gröbner HK length at p=%d, e=%d: %d.", ring_ideal.p, e, length)
    return length


# ── Rank engine for hypersurfaces ──────────────────────────────────────────────

def _find(parent: List[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _blocks_rank(p: int, blocks: List[List[Dict[int, int]]]) -> int:
    """Sum of F_p-ranks of independent blocks; each row maps target -> coefficient."""
    total = 0
    for rows in blocks:
        if len(rows) == 1:
            total += 1
            continue
        columns = sorted({t for row in rows for t in row})
        if len(columns) == 1:
            total += 1
            continue
        position = {t: i for i, t in enumerate(columns)}
        total += rank_mod_p([{position[t]: c for t, c in row.items()} for row in rows], p)
    return total


def hk_length_hypersurface(
    f: PrimeFieldPoly,
    p: int,
    e: int,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
) -> int:
    """
    dim F_p[x] / ((x_i^q) + (f)) = q^n - rank(multiplication by f on the box [0, q)^n).

    Source monomial m is linked to target m + a for every term x^a of f; the
    connected components of that bipartite graph are independent blocks.
    For homogeneous f every block sits in a single total degree.

    Args:
        f:        A nonzero polynomial over F_p without constant term.
        p, e:     Characteristic (must match ``f``) and Frobenius exponent.
        cap:      Largest accepted box size q^n (settings default).
        workers:  Worker processes for the block ranks (settings default).

    Returns:
        The length as an exact integer.
    """
    q = frobenius_q(p, e)
    if f.p != p:
        raise InputError(f"Polynomial is over F_{f.p}, but p = {p}.")
    if f.is_zero:
        raise InputError("Hypersurface equation must be nonzero.")
    if f.constant_term:
        raise InputError("Hypersurface equation must vanish at the origin (no constant term).")
    cap = cap if cap is not None else settings.hypersurface_cap
    workers = workers if workers is not None else settings.workers
    n = f.n
    size = q**n
    if size > cap:
        raise BudgetExceededError(f"The monomial box has q^n = {size} elements, over the cap of {cap}.")

    # Monomials are encoded as mixed-radix integers: m -> sum m_i q^i.
    radix = [q**i for i in range(n)]
    shifts = [(sum(k * r for k, r in zip(a, radix)), a, c) for a, c in f.terms]

    images: List[Dict[int, int]] = []
    parent = list(range(2 * size))  # sources 0..size-1, targets size..2*size-1
    for index, m in enumerate(product(*(range(q) for _ in range(n)))):
        # product() varies the last coordinate fastest; reverse to match the radix.
        m = m[::-1]
        row: Dict[int, int] = {}
        for offset, a, c in shifts:
            if all(x + y < q for x, y in zip(m, a)):
                target = index + offset
                row[target] = c
                ra, rb = _find(parent, index), _find(parent, size + target)
                if ra != rb:
                    parent[ra] = rb
        images.append(row)

    blocks: Dict[int, List[Dict[int, int]]] = {}
    for index, row in enumerate(images):
        if row:
            blocks.setdefault(_find(parent, index), []).append(row)
    ordered = [blocks[root] for root in sorted(blocks)]
    logger.debug(
        "Multiplication by f on %d monomials splits into %d blocks (largest %d).",
        size, len(ordered), max((len(b) for b in ordered), default=0),
    )

    parts = [ordered[r.start:r.stop] for r in split_range(len(ordered), workers)]
    rank = sum(map_chunks(partial(_blocks_rank, p), parts, workers))
    length = size - rank
    logger.info("Hypersurface HK length at p=%d, e=%d: %d.", p, e, length)
    return length


# ── Named ideals ───────────────────────────────────────────────────────────────

def determinantal_ideal(m: int, n: int, p: int) -> PrimeFieldIdeal:
    """
    2x2 minors x_ij x_kl - x_il x_kj of a generic m x n matrix over F_p,
    variables ordered row-major (x_ij is variable i*n + j).
    """
    require_prime(p)
    if m < 1 or n < 1:
        raise InputError("Matrix shape needs m, n >= 1.")
    count = m * n

    def unit(*indices: int) -> Exponent:
        out = [0] * count
        for i in indices:
            out[i] += 1
        return tuple(out)

    minors = []
    for i, k in combinations(range(m), 2):
        for j, l in combinations(range(n), 2):
            minors.append(PrimeFieldPoly.from_terms(p, count, [
                (unit(i * n + j, k * n + l), 1),
                (unit(i * n + l, k * n + j), -1),
            ]))
    return PrimeFieldIdeal(p, count, tuple(minors))


def han_monsky_polynomial() -> PrimeFieldPoly:
    """x1^4 + x2^4 + x3^4 + x4^4 over F_5."""
    return PrimeFieldPoly.from_terms(5, 4, [(tuple(4 if i == j else 0 for j in range(4)), 1) for i in range(4)])
