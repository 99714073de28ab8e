from fractions import Fraction

import pytest

from services.chern import (
    c1_projective_space,
    c2_closed_form,
    c2_projective_space,
    euler_characteristic_projective,
    hilbert_polynomial_value,
    summand_degrees,
    total_chern_class,
)
from services.frobenius import frobenius_decompose_projective
from services.toric_geometry import projective_space_fan
from utils.errors import InputError


def test_summand_degrees_on_projective_plane():
    dec = frobenius_decompose_projective(projective_space_fan(2), 3, 1)
    assert summand_degrees(dec) == {-2: 1, -1: 7, 0: 1}


def test_total_chern_class():
    assert total_chern_class({0: 1, -1: 3}, 2) == (1, -3, 3)
    assert total_chern_class({}, 3) == (1, 0, 0, 0)
    # (1 + h)^2 (1 - 2h) = 1 + 0h - 3h^2 + ...
    assert total_chern_class({1: 2, -2: 1}, 2) == (1, 0, -3)


@pytest.mark.parametrize("n, p, e", [(1, 5, 1), (2, 2, 1), (2, 3, 2), (3, 2, 1)])
def test_c1_matches_closed_form(n, p, e):
    result = c1_projective_space(n, p, e)
    q = p**e
    assert result.from_decomposition == Fraction(-(n + 1) * (q**n - q ** (n - 1)), 2)
    assert result.agrees


@pytest.mark.parametrize("n, p, e, expected", [
    (2, 2, 1, 3),
    (2, 3, 1, 35),
    (2, 2, 2, 150),
    (3, 2, 1, 27),
    (4, 2, 1, 185),
])
def test_c2_projective_space(n, p, e, expected):
    result = c2_projective_space(n, p, e)
    assert result.from_decomposition == expected
    assert result.closed_form == expected
    assert result.agrees


def test_c2_needs_a_surface():
    with pytest.raises(InputError):
        c2_projective_space(1, 2, 1)


def test_hilbert_polynomial_value():
    assert hilbert_polynomial_value(0, 2) == 1
    assert hilbert_polynomial_value(1, 2) == 3
    assert hilbert_polynomial_value(-1, 2) == 0
    assert hilbert_polynomial_value(-3, 2) == 1
    assert hilbert_polynomial_value(2, 3) == 10


@pytest.mark.parametrize("n, p, e", [(1, 3, 1), (2, 2, 2), (2, 5, 1), (3, 3, 1)])
def test_euler_characteristic_is_one(n, p, e):
    dec = frobenius_decompose_projective(projective_space_fan(n), p, e)
    assert euler_characteristic_projective(dec) == 1


def test_c2_closed_form_on_plane():
    assert c2_closed_form(2, 2) == 3
    assert c2_closed_form(2, 3) == 35


def test_chern_numbers_reuse_a_given_decomposition(monkeypatch):
    dec = frobenius_decompose_projective(projective_space_fan(2), 2, 2)

    def no_decomposition(*args, **kwargs):
        raise AssertionError("decomposed again")

    monkeypatch.setattr("services.chern.frobenius_decompose_projective", no_decomposition)
    assert c1_projective_space(2, 2, 2, decomposition=dec).agrees
    c2 = c2_projective_space(2, 2, 2, decomposition=dec)
    assert c2.from_decomposition == 150
    assert c2.agrees
    with pytest.raises(InputError):
        c2_projective_space(2, 3, 2, decomposition=dec)
