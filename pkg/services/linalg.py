"""
services/linalg.py — Smith normal form, cokernels and exact elimination.

This is the substrate for every class-group computation. Matrices are small
(desk scale, up to roughly 50x50), so the Smith form is computed with plain
elementary row/column operations, always pivoting on the entry of minimal
absolute value. Determinants, ranks and solves go through sympy's
DomainMatrix over ZZ, QQ and GF(p).
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from models.linalg import (
    AbelianGroupPresentation,
    GroupElement,
    IntegerMatrix,
    SmithDecomposition,
)
from utils.errors import DimensionMismatchError
from utils.numbers import Rational

logger = logging.getLogger(__name__)


# ── Smith normal form ──────────────────────────────────────────────────────────

def _swap_rows(m: List[List[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: List[List[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m: List[List[int]], target: int, source: int, factor: int) -> None:
    """row[target] += factor * row[source]"""
    src = m[source]
    m[target] = [a + factor * b for a, b in zip(m[target], src)]


def _add_col(m: List[List[int]], target: int, source: int, factor: int) -> None:
    """col[target] += factor * col[source]"""
    for row in m:
        row[target] += factor * row[source]


def smith_normal_form(a: IntegerMatrix) -> SmithDecomposition:
    """
    Compute unimodular U, V with ``U @ a @ V == S`` diagonal.

    The diagonal d_1, d_2, ... of S is non-negative and satisfies
    d_i | d_{i+1}; zeros come last. S is uniquely determined by ``a``.
    """
    k, n = a.rows, a.cols
    s = a.to_rows()
    u = IntegerMatrix.identity(k).to_rows()
    # V is tracked transposed so column operations become row operations.
    vt = IntegerMatrix.identity(n).to_rows()

    t = 0
    while t < min(k, n):
        # Pick the nonzero entry of minimal absolute value in the trailing block.
        pivot = min(
            ((abs(s[i][j]), i, j) for i in range(t, k) for j in range(t, n) if s[i][j] != 0),
            default=None,
        )
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            _swap_rows(s, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(s, t, pj)
            _swap_rows(vt, t, pj)

        dirty = False
        for i in range(t + 1, k):
            factor = s[i][t] // s[t][t]
            if factor:
                _add_row(s, i, t, -factor)
                _add_row(u, i, t, -factor)
            dirty = dirty or s[i][t] != 0
        for j in range(t + 1, n):
            factor = s[t][j] // s[t][t]
            if factor:
                _add_col(s, j, t, -factor)
                _add_row(vt, j, t, -factor)
            dirty = dirty or s[t][j] != 0
        if dirty:
            # A nonzero remainder is strictly smaller than the pivot: re-pivot.
            continue

        offender = next(
            (i for i in range(t + 1, k) for j in range(t + 1, n) if s[i][j] % s[t][t] != 0),
            None,
        )
        if offender is not None:
            _add_row(s, t, offender, 1)
            _add_row(u, t, offender, 1)
            continue

        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return SmithDecomposition(
        U=IntegerMatrix.from_rows(u, cols=k),
        S=IntegerMatrix.from_rows(s, cols=n),
        V=IntegerMatrix.from_rows(vt, cols=n).transpose(),
    )


# ── Abelian groups ─────────────────────────────────────────────────────────────

def cokernel(a: IntegerMatrix) -> AbelianGroupPresentation:
    """
    The group Z^rows / a·Z^cols.

    ``free_rank = rows - rank(a)``; the torsion invariants are the SNF
    diagonal entries greater than one.
    """
    snf = smith_normal_form(a)
    diag = snf.invariants
    torsion_rows = tuple(i for i, d in enumerate(diag) if d > 1)
    free_rows = tuple(range(snf.rank, a.rows))
    return AbelianGroupPresentation(
        generator_count=a.rows,
        relation_matrix=a,
        snf=snf,
        free_rank=len(free_rows),
        torsion_invariants=tuple(diag[i] for i in torsion_rows),
        torsion_rows=torsion_rows,
        free_rows=free_rows,
    )


def reduce(g: AbelianGroupPresentation, v: Sequence[int]) -> GroupElement:
    """Canonical form of the class of ``v`` in the cokernel ``g``."""
    if len(v) != g.generator_count:
        raise DimensionMismatchError(
            f"Vector of length {len(v)} does not match {g.generator_count} generators."
        )
    w = g.snf.U.apply([int(x) for x in v])
    torsion = tuple(w[i] % d for i, d in zip(g.torsion_rows, g.torsion_invariants))
    free = tuple(w[i] for i in g.free_rows)
    return GroupElement(g, torsion, free)


def is_torsion(x: GroupElement) -> bool:
    """True iff every free coordinate of ``x`` vanishes."""
    return not any(x.free)


# ── Exact elimination ──────────────────────────────────────────────────────────

def _rational(x: Rational) -> QQ.dtype:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant over ZZ."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatchError("Determinant of a non-square matrix.")
    if n == 0:
        return 1
    m = DomainMatrix([[ZZ.convert(int(x)) for x in r] for r in rows], (n, n), ZZ)
    return int(m.det())


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Rank over Q."""
    if not rows or not rows[0]:
        return 0
    m = DomainMatrix([[_rational(x) for x in r] for r in rows], (len(rows), len(rows[0])), QQ)
    return m.rank()


def solve_rational(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> Tuple[Fraction, ...]:
    """The unique x with ``rows @ x == rhs``; ``rows`` must be square and invertible."""
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise DimensionMismatchError("solve_rational needs a square system.")
    a = DomainMatrix([[_rational(x) for x in r] for r in rows], (n, n), QQ)
    b = DomainMatrix([[_rational(x)] for x in rhs], (n, 1), QQ)
    x = a.lu_solve(b).to_Matrix()
    return tuple(Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(n))


def kernel_line(rows: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Integer generator (up to sign, not yet primitive) of the kernel of a
    (d-1) x d matrix of rank d-1: the generalized cross product of its rows.
    """
    d = len(rows) + 1
    out = []
    for k in range(d):
        minor = [[r[j] for j in range(d) if j != k] for r in rows]
        out.append((-1) ** k * determinant(minor))
    return tuple(out)


def rank_mod_p(rows: Sequence[Union[Sequence[int], Mapping[int, int]]], p: int) -> int:
    """Rank over F_p. Rows are dense lists or sparse {column: value} maps."""
    field = GF(p)
    entries: Dict[int, Dict[int, object]] = {}
    n_cols = 0
    for i, row in enumerate(rows):
        items = row.items() if isinstance(row, Mapping) else enumerate(row)
        line = {j: field.convert(v % p) for j, v in items if v % p}
        if line:
            entries[i] = line
            n_cols = max(n_cols, max(line) + 1)
    if not entries:
        return 0
    return DomainMatrix(entries, (len(rows), n_cols), field).rank()
