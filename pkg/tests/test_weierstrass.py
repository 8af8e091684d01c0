from __future__ import annotations

from fractions import Fraction

import pytest

from cm_entangle.models.weierstrass import (
    Curve,
    conductor,
    count_points,
    invariants,
    is_good_prime,
    is_supersingular,
    minimal_model,
    quadratic_twist,
    trace_of_frobenius,
    twist_factor,
)


@pytest.mark.parametrize(
    ("ainvs", "j"),
    [
        ((0, 0, 1, 0, 0), 0),
        ((0, 0, 0, -15, 22), 54000),
        ((1, -1, 0, -2, -1), -3375),
        ((0, 0, 1, -2174420, 1234136692), -(2 ** 18) * 3 ** 3 * 5 ** 3 * 23 ** 3 * 29 ** 3),
    ],
)
def test_j_invariant(ainvs, j: int) -> None:
    assert invariants(Curve(ainvs))[3] == j


def test_invariants_relation(curve49: Curve) -> None:
    c4, c6, disc, j = invariants(curve49)
    assert (c4, c6, disc) == (105, 1323, -343)
    assert 1728 * disc == c4 ** 3 - c6 ** 2
    assert j == Fraction(c4 ** 3, disc)


def test_singular_and_malformed_curves() -> None:
    with pytest.raises(ValueError):
        Curve((0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        Curve((0, 0, 0, -1))
    with pytest.raises(ValueError):
        Curve((0, 0, 0, Fraction(1, 2), 0))
    with pytest.raises(ValueError):
        Curve.from_text("[0,0,0,-1")


def test_text_round_trip(curve49: Curve) -> None:
    assert curve49.to_text() == "[1,-1,0,-2,-1]"
    assert Curve.from_text(" [1, -1, 0, -2, -1] ") == curve49


@pytest.mark.parametrize(
    ("ainvs", "expected", "kodaira", "exponent"),
    [
        ((0, 0, 0, -1, 0), 32, "III", 5),
        ((0, 0, 1, 0, -7), 27, "IV*", 3),
        ((1, -1, 0, -2, -1), 49, "III", 2),
        ((0, 0, 0, -44, -112), 64, "I5*", 6),
    ],
)
def test_conductor_and_kodaira(ainvs, expected: int, kodaira: str, exponent: int) -> None:
    data = conductor(Curve(ainvs))
    assert data.conductor == expected
    (local,) = data.local_data
    assert (local.kodaira, local.conductor_exponent) == (kodaira, exponent)


def test_conductor_of_163_curve() -> None:
    assert conductor(Curve((0, 0, 1, -2174420, 1234136692))).conductor == 163 ** 2


def test_minimal_model_removes_scaling(curve49: Curve) -> None:
    scaled = Curve((2, -4, 0, -32, -64))
    assert scaled.change_coordinates(2, 0, 0, 0) == curve49
    assert minimal_model(scaled) == curve49
    assert conductor(scaled).minimal_model == curve49


def test_minimal_model_normalizes_translation(curve49: Curve) -> None:
    moved = curve49.change_coordinates(1, 3, -2, 5)
    assert moved != curve49
    assert minimal_model(moved) == curve49


def test_quadratic_twist_table_pair() -> None:
    base = Curve((0, 0, 0, -15, 22))
    assert quadratic_twist(base, -3) == Curve((0, 0, 0, -135, -594))
    assert quadratic_twist(base, 1) is base


def test_twist_is_an_involution(curve49: Curve) -> None:
    twisted = quadratic_twist(curve49, 5)
    assert twisted.j == curve49.j
    assert conductor(twisted).conductor == 49 * 25
    assert quadratic_twist(twisted, 5) == minimal_model(curve49)


@pytest.mark.parametrize("d", [0, 4, -12])
def test_twist_rejects_non_squarefree(curve49: Curve, d: int) -> None:
    with pytest.raises(ValueError):
        quadratic_twist(curve49, d)


def test_twist_factor(curve49: Curve) -> None:
    assert twist_factor(Curve((0, 0, 0, -15, 22)), Curve((0, 0, 0, -135, -594))) == -3
    assert twist_factor(curve49, curve49) == 1
    assert twist_factor(curve49, quadratic_twist(curve49, 5)) == 5
    assert twist_factor(curve49, quadratic_twist(curve49, -35)) == -35


def test_twist_factor_rejects_extra_automorphisms(curve49: Curve) -> None:
    with pytest.raises(ValueError):
        twist_factor(Curve((0, 0, 0, -1, 0)), Curve((0, 0, 0, 4, 0)))
    with pytest.raises(ValueError):
        twist_factor(curve49, Curve((0, 0, 0, -15, 22)))


def test_point_counts(curve49: Curve) -> None:
    assert count_points(curve49, 2) == 2
    assert trace_of_frobenius(curve49, 2) == 1
    assert trace_of_frobenius(curve49, 11) ** 2 == 16


@pytest.mark.parametrize("p", [3, 5, 13, 17])
def test_inert_primes_are_supersingular(curve49: Curve, p: int) -> None:
    assert is_supersingular(curve49, p)
    assert count_points(curve49, p) == p + 1


@pytest.mark.parametrize("p", [2, 11, 23, 29])
def test_split_primes_are_ordinary(curve49: Curve, p: int) -> None:
    assert not is_supersingular(curve49, p)


def test_bad_primes_are_rejected(curve49: Curve) -> None:
    assert not is_good_prime(curve49, 7)
    assert is_good_prime(curve49, 2)
    with pytest.raises(ValueError):
        count_points(curve49, 7)
    with pytest.raises(ValueError):
        count_points(curve49, 9)


def test_hasse_bound_on_random_primes(curve49: Curve) -> None:
    for p in (101, 1009, 10007):
        a = trace_of_frobenius(curve49, p)
        assert a * a <= 4 * p
