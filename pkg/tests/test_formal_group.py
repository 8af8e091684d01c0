from __future__ import annotations

from fractions import Fraction

import pytest

from cm_entangle.models.formal_group import (
    FormalGroupLaw,
    group_law,
    multiplication_by_m,
    reduced_height,
    torsion_degree_lower_bound,
    torsion_valuation_bound,
)
from cm_entangle.models.weierstrass import Curve
from cm_entangle.utils.series import TruncatedSeries


def test_low_degree_terms_of_group_law(curve49: Curve) -> None:
    law = group_law(curve49, 6).F
    a1, a2, a3 = curve49.a1, curve49.a2, curve49.a3
    assert law.coefficient((1, 0)) == 1
    assert law.coefficient((0, 1)) == 1
    assert law.coefficient((1, 1)) == -a1
    assert law.coefficient((2, 1)) == -a2
    assert law.coefficient((1, 2)) == -a2
    assert law.coefficient((3, 1)) == -2 * a3
    assert law.coefficient((2, 2)) == a1 * a2 - 3 * a3


def test_quadratic_part_of_group_law(curve49: Curve) -> None:
    law = group_law(curve49, 4).F
    assert law.coefficient((2, 0)) == 0
    assert law.coefficient((1, 1)) == -1
    assert law.coefficient((0, 2)) == 0


def test_inverse_cancels_on_curve_with_a3() -> None:
    fg = FormalGroupLaw(Curve((0, 0, 1, -38, 90)), 10)
    t = TruncatedSeries.variable(0, 1, 10)
    assert fg.add(t, fg.inverse_series.compose(t)).is_zero()


def test_group_law_is_commutative() -> None:
    law = group_law(Curve((0, 0, 1, -38, 90)), 8).F
    for exps, coeff in law.items():
        assert law.coefficient(tuple(reversed(exps))) == coeff


def test_identity_and_inverse(curve49: Curve) -> None:
    fg = FormalGroupLaw(curve49, 10)
    t = TruncatedSeries.variable(0, 1, 10)
    assert fg.add(t, TruncatedSeries.zero(1, 10)) == t
    assert fg.add(t, fg.negate(t)).is_zero()
    assert multiplication_by_m(fg, -1) == fg.inverse_series


def test_w_series_satisfies_weierstrass_equation(curve49: Curve) -> None:
    fg = FormalGroupLaw(curve49, 10)
    z = TruncatedSeries.variable(0, 1, 11)
    w = fg.w
    c = curve49
    rhs = z ** 3 + z * w * c.a1 + z * z * w * c.a2 + w * w * c.a3 + z * w * w * c.a4 + w ** 3 * c.a6
    assert w == rhs
    assert w.valuation() == 3


def test_multiplication_by_two(curve49: Curve) -> None:
    fg = FormalGroupLaw(curve49, 8)
    double = multiplication_by_m(fg, 2)
    assert double.coefficient(1) == 2
    assert double.coefficient(2) == -curve49.a1
    assert multiplication_by_m(fg, 0).is_zero()
    assert multiplication_by_m(fg, 1) == TruncatedSeries.variable(0, 1, 8)


@pytest.mark.parametrize(("m", "k"), [(2, 3), (3, 2), (-2, 5)])
def test_multiplication_composes(curve49: Curve, m: int, k: int) -> None:
    fg = FormalGroupLaw(curve49, 12)
    composed = multiplication_by_m(fg, m).compose(multiplication_by_m(fg, k))
    assert composed == multiplication_by_m(fg, m * k)


def test_associativity_in_three_variables() -> None:
    fg = FormalGroupLaw(Curve((1, -1, 0, -2, -1)), 6)
    x, y, z = (TruncatedSeries.variable(i, 3, 6) for i in range(3))
    assert fg.add(fg.add(x, y), z) == fg.add(x, fg.add(y, z))


@pytest.mark.parametrize(
    ("p", "h", "method"),
    [(2, 1, "series"), (3, 2, "series"), (5, 2, "series"), (11, 1, "trace"), (13, 2, "trace")],
)
def test_reduced_height(curve49: Curve, p: int, h: int, method: str) -> None:
    result = reduced_height(curve49, p, p * p + 2)
    assert (result.h, result.method) == (h, method)
    assert result.witness == p ** h


def test_reduced_height_mod_seven_on_ordinary_curve() -> None:
    # Δ_K = -19，7 分裂
    result = reduced_height(Curve((0, 0, 1, -38, 90)), 7, 51)
    assert (result.h, result.witness, result.method) == (1, 7, "series")


def test_reduced_height_preconditions(curve49: Curve) -> None:
    with pytest.raises(ValueError):
        reduced_height(curve49, 7, 60)
    with pytest.raises(ValueError):
        reduced_height(curve49, 3, 9)


def test_group_law_rejects_constant_terms(curve49: Curve) -> None:
    fg = FormalGroupLaw(curve49, 6)
    one = TruncatedSeries.constant(1, 1, 6)
    with pytest.raises(ValueError):
        fg.add(one, TruncatedSeries.variable(0, 1, 6))
    with pytest.raises(ValueError):
        FormalGroupLaw(curve49, 1)


def test_torsion_bounds() -> None:
    assert torsion_degree_lower_bound(3, 2, 1) == 8
    assert torsion_degree_lower_bound(2, 1, 3) == 4
    assert torsion_degree_lower_bound(7, 1, 2) == 42
    assert torsion_valuation_bound(1, 3, 2, 1) == Fraction(1, 8)
    assert torsion_valuation_bound(2, 7, 1, 1) == Fraction(1, 3)
    with pytest.raises(ValueError):
        torsion_degree_lower_bound(3, 3, 1)
    with pytest.raises(ValueError):
        torsion_valuation_bound(0, 3, 1, 1)


@pytest.mark.parametrize("p", [0, 1, 4, -3])
def test_reduced_height_rejects_non_primes(curve49: Curve, p: int) -> None:
    with pytest.raises(ValueError):
        reduced_height(curve49, p, 40)
