import random
from fractions import Fraction

import pytest

from models.linalg import IntegerMatrix
from services.linalg import (
    cokernel,
    determinant,
    is_torsion,
    kernel_line,
    rank,
    rank_mod_p,
    reduce,
    smith_normal_form,
    solve_rational,
)
from utils.errors import DimensionMismatchError


def _assert_smith(a: IntegerMatrix):
    dec = smith_normal_form(a)
    assert dec.U @ a @ dec.V == dec.S
    assert abs(determinant(dec.U.to_rows())) == 1
    assert abs(determinant(dec.V.to_rows())) == 1
    for i in range(dec.S.rows):
        for j in range(dec.S.cols):
            if i != j:
                assert dec.S[i, j] == 0
    diag = dec.invariants
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == tuple(nonzero)
    for d, d_next in zip(nonzero, nonzero[1:]):
        assert d_next % d == 0
    return dec


def test_smith_empty_matrix():
    dec = smith_normal_form(IntegerMatrix.from_rows([], cols=0))
    assert dec.S.rows == 0 and dec.S.cols == 0
    assert dec.invariants == ()


def test_smith_identity():
    dec = _assert_smith(IntegerMatrix.identity(3))
    assert dec.S == IntegerMatrix.identity(3)


def test_smith_veronese_pairing_matrix():
    dec = _assert_smith(IntegerMatrix.from_rows([[1, 0], [1, 2]]))
    assert dec.invariants == (1, 2)


def test_smith_random_matrices():
    rng = random.Random(7)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = IntegerMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        _assert_smith(a)


def test_smith_known_invariants():
    dec = _assert_smith(IntegerMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert dec.invariants == (2, 6, 12)


def test_cokernel_examples():
    z = cokernel(IntegerMatrix.from_rows([[0]]))
    assert (z.free_rank, z.torsion_invariants) == (1, ())
    assert z.describe() == "Z"

    veronese = cokernel(IntegerMatrix.from_rows([[1, 0], [1, 2]]))
    assert (veronese.free_rank, veronese.torsion_invariants) == (0, (2,))

    two = cokernel(IntegerMatrix.from_rows([[2]]))
    assert two.torsion_invariants == (2,)
    assert two.describe() == "Z/2"


def test_cokernel_counts_add_up():
    g = cokernel(IntegerMatrix.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 0], [0, 0, 0]]))
    assert g.free_rank == 2
    assert g.torsion_invariants == (6,)
    assert g.free_rank + len(g.torsion_invariants) + g.trivial_count == g.generator_count


def test_cokernel_ignores_redundant_relations():
    a = IntegerMatrix.from_rows([[1, 0], [1, 2], [0, 3]])
    b = IntegerMatrix.from_rows([[1, 0, 1], [1, 2, 3], [0, 3, 3]])  # third column = first + second
    ga, gb = cokernel(a), cokernel(b)
    assert (ga.free_rank, ga.torsion_invariants) == (gb.free_rank, gb.torsion_invariants)


def test_reduce_examples():
    two = cokernel(IntegerMatrix.from_rows([[2]]))
    assert reduce(two, [3]).coords == (1,)

    veronese = cokernel(IntegerMatrix.from_rows([[1, 0], [1, 2]]))
    assert reduce(veronese, [1, 1]).is_zero
    assert not reduce(veronese, [1, 0]).is_zero


def test_reduce_kills_relations_and_is_additive():
    a = IntegerMatrix.from_rows([[1, 0], [1, 2], [-1, 3], [0, 1]])
    g = cokernel(a)
    for j in range(a.cols):
        assert reduce(g, a.column(j)).is_zero

    rng = random.Random(3)
    for _ in range(20):
        v = [rng.randint(-5, 5) for _ in range(4)]
        w = [rng.randint(-5, 5) for _ in range(4)]
        vw = [x + y for x, y in zip(v, w)]
        assert reduce(g, vw) == reduce(g, v) + reduce(g, w)
        shifted = [x + y for x, y in zip(v, a.column(0))]
        assert reduce(g, shifted) == reduce(g, v)


def test_reduce_dimension_mismatch():
    g = cokernel(IntegerMatrix.from_rows([[2]]))
    with pytest.raises(DimensionMismatchError):
        reduce(g, [1, 2])


def test_is_torsion():
    z = cokernel(IntegerMatrix.from_rows([[0]]))
    two = cokernel(IntegerMatrix.from_rows([[2]]))
    assert is_torsion(z.zero())
    assert not is_torsion(reduce(z, [1]))
    assert is_torsion(reduce(two, [1]))


def test_exact_elimination_helpers():
    assert determinant([[2, 1], [7, 4]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([]) == 1
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[Fraction(1, 2), 1], [1, 3]]) == 2
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 2], [3, 1]], 5) == 1  # det = -5
    line = kernel_line([[1, 0, -1], [0, 1, -1]])
    assert line == (1, 1, 1)


def test_rank_mod_p_accepts_sparse_rows():
    assert rank_mod_p([{0: 1, 3: 1}, {0: 2, 3: 2}, {1: 1}], 3) == 2
    assert rank_mod_p([{0: 5}, {}], 5) == 0
    assert rank_mod_p([], 7) == 0
    assert rank_mod_p([[1, 0, 2], [0, 1, 1], [1, 1, 3]], 7) == 2


def test_rank_over_q_differs_from_f_p():
    rows = [[2, 1], [1, 3]]  # det = 5
    assert rank(rows) == 2
    assert rank_mod_p(rows, 5) == 1
    assert rank_mod_p(rows, 3) == 2


def test_solve_rational():
    assert solve_rational([[2, 0], [0, 3]], [1, 1]) == (Fraction(1, 2), Fraction(1, 3))
    assert solve_rational([[1, 1], [1, -1]], [Fraction(1, 2), 0]) == (Fraction(1, 4), Fraction(1, 4))
    with pytest.raises(DimensionMismatchError):
        solve_rational([[1, 2]], [1])
