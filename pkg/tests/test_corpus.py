import random

import pytest

from models.frobenius import Orientation
from services.corpus import random_cone, run_corpus, verify_cones
from services.toric_geometry import class_group, dualize, quadrant_cone, segre_ring, veronese_cone
from utils.errors import InputError, InvalidPrimeError


def test_random_cones_are_valid():
    rng = random.Random(11)
    for d in (2, 3, 4):
        for _ in range(5):
            cone = random_cone(rng, d)
            assert cone.lattice_rank == d
            assert cone.ray_count >= d
            assert sorted(dualize(dualize(cone.rays, d), d)) == sorted(cone.rays)


def test_random_cones_in_rank_three_and_up_are_not_simplicial():
    rng = random.Random(4)
    for d in (3, 4):
        for _ in range(5):
            cone = random_cone(rng, d)
            assert cone.ray_count > d
            assert class_group(cone).free_rank == cone.ray_count - d >= 1


def test_corpus_cones_mostly_have_infinite_class_group():
    report = run_corpus(seed=1, count=6, dims=(2, 3, 4), primes=(2,), e_max=1)
    assert [cone.lattice_rank for cone in report.cones] == [2, 3, 4, 2, 3, 4]
    infinite = [cone for cone in report.cones if class_group(cone).free_rank >= 1]
    assert len(infinite) >= 4
    assert report.passed


def test_random_cone_rejects_bad_dimension():
    with pytest.raises(InputError):
        random_cone(random.Random(0), 0)


def test_verify_named_cones():
    report = verify_cones([quadrant_cone(2), veronese_cone(), segre_ring().cone], primes=(2, 3), e_max=1)
    assert report.passed
    assert report.orientation == Orientation.AS_STATED
    assert len(report.entries) == 6
    assert all(entry.tau_consistent for entry in report.entries)
    assert not report.skipped


def test_cases_over_budget_are_skipped():
    report = verify_cones([segre_ring().cone], primes=(2, 5), e_max=2, budget=300)
    assert report.skipped == ((0, 5, 1), (0, 5, 2))
    assert [(entry.p, entry.e) for entry in report.entries] == [(2, 1), (2, 2)]
    assert report.passed


def test_empty_corpus_passes():
    report = run_corpus(seed=3, count=0)
    assert report.passed
    assert report.entries == ()


def test_corpus_is_deterministic_in_seed():
    first = run_corpus(seed=5, count=3, dims=(2, 3), primes=(2,), e_max=1)
    second = run_corpus(seed=5, count=3, dims=(2, 3), primes=(2,), e_max=1)
    assert first.cones == second.cones
    assert first.passed and second.passed


def test_corpus_argument_checks():
    with pytest.raises(InputError):
        run_corpus(seed=0, count=-1)
    with pytest.raises(InputError):
        run_corpus(seed=0, count=1, dims=())
    with pytest.raises(InvalidPrimeError):
        verify_cones([quadrant_cone(2)], primes=(4,))


@pytest.mark.slow
def test_seeded_corpus_of_twenty_cones():
    report = run_corpus(seed=0, count=20)
    assert report.passed
    assert report.orientation == Orientation.AS_STATED
    assert sum(class_group(cone).free_rank >= 1 for cone in report.cones) == 13
