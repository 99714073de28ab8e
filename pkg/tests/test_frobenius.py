from fractions import Fraction

import pytest

from models.frobenius import Orientation
from models.toric import DivisorClass, FanData, WeilDivisor
from services.frobenius import (
    check_tau_identities,
    class_sum,
    compose_decomposition,
    frobenius_decompose_affine,
    frobenius_decompose_projective,
    frobenius_pushforward_twist,
    tau_top,
    verify_theorem_analogue,
    verify_theorem_main,
)
from services.toric_geometry import (
    build_fan,
    canonical_class,
    class_group,
    divisor_class,
    prime_divisor,
    projective_degree,
    projective_space_fan,
    quadrant_cone,
    round_down,
    segre_ring,
    veronese_cone,
)
from utils.errors import BudgetExceededError, InvalidFanError, InvalidPrimeError


@pytest.fixture
def segre():
    return segre_ring().cone


def _degrees(dec):
    return {projective_degree(dec.source, s.divisor_class): s.multiplicity for s in dec.summands}


# ── Decompositions ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("p", [2, 3, 5])
def test_quadrant_pushforward_is_free(p):
    dec = frobenius_decompose_affine(quadrant_cone(2), p, 1)
    assert len(dec.summands) == 1
    assert dec.summands[0].divisor_class.is_zero
    assert dec.summands[0].multiplicity == p**2


def test_segre_decomposition(segre):
    """F_* A = A^10 + p + q^5 with cl(q) = cl(omega) = -cl(p)."""
    dec = frobenius_decompose_affine(segre, 2, 1)
    k = canonical_class(segre)
    zero = DivisorClass(class_group(segre).zero())
    assert dec.multiplicities() == {zero: 10, k: 5, -k: 1}
    assert class_sum(dec) == k * 4
    assert dec.rank == 16


def test_witnesses_reproduce_their_divisors(segre):
    for cone, p, e in ((segre, 2, 1), (segre, 3, 1), (veronese_cone(), 3, 2)):
        dec = frobenius_decompose_affine(cone, p, e)
        for s in dec.summands:
            pairings = cone.pairings(s.witness_s)
            expected = round_down(WeilDivisor(pairings).to_rational().scale(Fraction(1, dec.q)))
            assert s.witness_divisor == expected
            assert divisor_class(cone, s.witness_divisor) == s.divisor_class
            assert all(0 <= x < dec.q for x in s.witness_s)


def test_veronese_decomposition():
    dec = frobenius_decompose_affine(veronese_cone(), 3, 1)
    assert dec.rank == 9
    assert sorted(dec.multiplicities().values()) == [4, 5]
    assert class_sum(dec).is_zero


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("e", [1, 2])
def test_projective_line(p, e):
    q = p**e
    dec = frobenius_decompose_projective(projective_space_fan(1), p, e)
    assert _degrees(dec) == {0: 1, -1: q - 1}
    assert projective_degree(dec.source, class_sum(dec)) == 1 - q
    report = verify_theorem_analogue(projective_space_fan(1), p, e)
    assert report.passed


def test_projective_plane():
    dec = frobenius_decompose_projective(projective_space_fan(2), 2, 1)
    assert _degrees(dec) == {0: 1, -1: 3}


def test_rank_identity():
    for cfg, p, e in (
        (segre_ring().cone, 5, 1),
        (veronese_cone(), 2, 3),
        (projective_space_fan(3), 3, 1),
        (quadrant_cone(3), 2, 2),
    ):
        dec = (frobenius_decompose_projective if cfg.kind == "fan" else frobenius_decompose_affine)(cfg, p, e)
        assert dec.rank == (p**e) ** cfg.lattice_rank


def test_result_does_not_depend_on_chunking(segre):
    one = frobenius_decompose_affine(segre, 3, 1, workers=1)
    many = frobenius_decompose_affine(segre, 3, 1, workers=3)
    assert one == many


def test_budget_and_prime_guards(segre):
    with pytest.raises(BudgetExceededError):
        frobenius_decompose_affine(segre, 5, 2, budget=1000)
    with pytest.raises(InvalidPrimeError):
        frobenius_decompose_affine(segre, 4, 1)
    with pytest.raises(InvalidPrimeError):
        frobenius_decompose_affine(segre, 2, 0)


def test_non_smooth_or_incomplete_fan_rejected():
    singular = FanData(lattice_rank=2, rays=((1, 0), (1, 2), (-1, -1)), maximal_cones=((0, 1), (1, 2), (2, 0)))
    with pytest.raises(InvalidFanError):
        frobenius_decompose_projective(singular, 2, 1)
    partial_fan = build_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)], complete=False)
    with pytest.raises(InvalidFanError):
        verify_theorem_analogue(partial_fan, 2, 1)


# ── Twists and composition ─────────────────────────────────────────────────────

def test_twist_by_zero_matches_plain_pushforward(segre):
    plain = frobenius_decompose_affine(segre, 2, 1)
    twisted = frobenius_pushforward_twist(segre, WeilDivisor((0,) * segre.ray_count), 2, 1)
    assert plain.multiplicities() == twisted.multiplicities()


def test_twist_on_projective_line():
    """F_* O(a) on P^1 splits as O(floor((a + s) / p)) over s in [0, p)."""
    p1 = projective_space_fan(1)
    dec = frobenius_pushforward_twist(p1, prime_divisor(p1, 0).scale(3), 2, 1)
    assert _degrees(dec) == {1: 2}


@pytest.mark.parametrize("cfg, p", [
    (projective_space_fan(1), 2),
    (projective_space_fan(1), 3),
    (quadrant_cone(2), 3),
    (projective_space_fan(2), 2),
])
def test_composition_matches_direct_decomposition(cfg, p):
    e1 = frobenius_decompose_affine(cfg, p, 1)
    e2 = frobenius_decompose_affine(cfg, p, 2)
    composed = compose_decomposition(e1)
    assert composed.e == 2 and composed.q == p**2
    assert composed.multiplicities() == e2.multiplicities()


def test_composition_on_segre(segre):
    assert compose_decomposition(frobenius_decompose_affine(segre, 2, 1)).multiplicities() == \
        frobenius_decompose_affine(segre, 2, 2).multiplicities()


# ── Theorem checks ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("p, e", [(2, 1), (3, 2), (5, 1)])
def test_main_identity_on_quadrant(p, e):
    report = verify_theorem_main(quadrant_cone(2), p, e)
    assert report.passed
    assert report.lhs.is_zero and report.rhs.is_zero


def test_main_identity_on_segre(segre):
    report = verify_theorem_main(segre, 2, 1)
    k = canonical_class(segre)
    assert report.passed
    assert report.orientation_used == Orientation.AS_STATED
    assert report.lhs == k * 8
    assert report.rhs == k * 8
    assert report.difference.is_zero


def test_sign_flipped_orientation_is_reported(segre):
    flipped = verify_theorem_main(segre, 2, 1, orientation=Orientation.SIGN_FLIPPED)
    assert not flipped.passed
    assert flipped.orientation_used == Orientation.SIGN_FLIPPED
    assert not flipped.torsion_flag


@pytest.mark.parametrize("e", [1, 2])
def test_main_identity_on_veronese(e):
    report = verify_theorem_main(veronese_cone(), 3, e)
    assert report.passed
    assert report.torsion_flag
    assert not any(report.lhs.free) and not any(report.rhs.free)


@pytest.mark.parametrize("n, p, e, c1", [(1, 5, 1, -4), (2, 2, 1, -3), (1, 3, 2, -8)])
def test_projective_analogue(n, p, e, c1):
    fan = projective_space_fan(n)
    dec = frobenius_decompose_projective(fan, p, e)
    assert projective_degree(fan, class_sum(dec)) == c1
    report = verify_theorem_analogue(fan, p, e, decomposition=dec)
    assert report.passed
    assert report.difference.is_zero


def test_analogue_on_hirzebruch_surface():
    """F_1: rays (1,0), (0,1), (-1,1), (0,-1); Pic = Z^2."""
    fan = build_fan(2, [(1, 0), (0, 1), (-1, 1), (0, -1)], [(0, 1), (1, 2), (2, 3), (3, 0)])
    for p, e in ((2, 1), (3, 1), (2, 2)):
        assert verify_theorem_analogue(fan, p, e).passed


# ── Codimension-one Riemann-Roch component ─────────────────────────────────────

def test_tau_examples(segre):
    k = canonical_class(segre)
    zero = DivisorClass(class_group(segre).zero())
    k_free = k.free[0]
    assert tau_top(segre, zero, 1).free_part == (Fraction(k_free, 2),)
    assert tau_top(segre, k, 1).free_part == (Fraction(-k_free, 2),)

    dec = frobenius_decompose_affine(segre, 2, 1)
    assert tau_top(segre, class_sum(dec), dec.rank).free_part == (Fraction(8, 2) * k_free,)
    assert check_tau_identities(segre, dec)


def test_tau_flags_torsion():
    veronese = veronese_cone()
    zero = DivisorClass(class_group(veronese).zero())
    tau = tau_top(veronese, zero, 1)
    assert tau.free_part == ()
    assert tau.torsion_ambiguous
