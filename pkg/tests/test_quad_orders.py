from __future__ import annotations

from math import gcd

import pytest

from cm_entangle.models.quad_orders import (
    CLASS_NUMBER_ONE_DISCRIMINANTS,
    Order,
    OrderResidueElement,
    class_number_by_forms,
    class_number_by_formula,
    order_from_discriminant,
    ray_class_degree,
    residue_unit_count,
    split_type,
    special_prime,
    unit_image_order,
)


@pytest.mark.parametrize(
    ("disc", "fund_disc", "conductor", "unit_order"),
    [
        (-28, -7, 2, 2),
        (-4, -4, 1, 4),
        (-3, -3, 1, 6),
        (-12, -3, 2, 2),
        (-16, -4, 2, 2),
        (-27, -3, 3, 2),
        (-8, -8, 1, 2),
    ],
)
def test_order_from_discriminant(disc: int, fund_disc: int, conductor: int, unit_order: int) -> None:
    order = order_from_discriminant(disc)
    assert (order.fund_disc, order.conductor, order.unit_order) == (fund_disc, conductor, unit_order)
    assert order.conductor ** 2 * order.fund_disc == disc


@pytest.mark.parametrize("disc", [5, 0, -5, -6, -1])
def test_invalid_discriminants(disc: int) -> None:
    with pytest.raises(ValueError):
        Order(disc)


def test_units_are_units() -> None:
    for disc in (-3, -4, -7):
        order = Order(disc)
        units = order.units()
        assert len(units) == order.unit_order
        for u, v in units:
            assert OrderResidueElement(order, 1000, u, v).norm() == 1


def test_class_number_by_forms_examples() -> None:
    assert class_number_by_forms(Order(-7)).h == 1
    assert class_number_by_forms(Order(-163)).h == 1
    data = class_number_by_forms(Order(-23))
    assert data.h == 3
    assert sorted(data.forms) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]


def test_reduced_forms_satisfy_conditions() -> None:
    for disc in (-84, -100, -151, -195):
        for a, b, c in class_number_by_forms(Order(disc)).forms:
            assert b * b - 4 * a * c == disc
            assert gcd(gcd(a, b), c) == 1
            assert abs(b) <= a <= c
            if abs(b) == a or a == c:
                assert b >= 0


def test_class_number_one_discriminants() -> None:
    found = [
        d for d in range(-3, -201, -1)
        if d % 4 in (0, 1) and class_number_by_forms(Order(d)).h == 1
    ]
    assert tuple(found) == CLASS_NUMBER_ONE_DISCRIMINANTS


@pytest.mark.parametrize(("disc", "h"), [(-28, 1), (-100, 2), (-27, 1), (-12, 1), (-16, 1), (-63, 4)])
def test_class_number_formula(disc: int, h: int) -> None:
    assert class_number_by_formula(Order(disc)) == h


def test_class_number_formula_matches_forms() -> None:
    for d in range(-3, -2001, -1):
        if d % 4 not in (0, 1):
            continue
        order = Order(d)
        assert class_number_by_formula(order) == class_number_by_forms(order).h, d


@pytest.mark.parametrize(("disc", "n", "count"), [(-7, 3, 8), (-7, 7, 42), (-7, 1, 1), (-7, 2, 1), (-16, 2, 2), (-3, 2, 3)])
def test_residue_unit_count(disc: int, n: int, count: int) -> None:
    assert residue_unit_count(Order(disc), n) == count


def test_residue_unit_count_local_patterns() -> None:
    order = Order(-7)
    # 3 惰性: p^{2n-2}(p² - 1)；2 分裂: (p^{n-1}(p - 1))²
    assert residue_unit_count(order, 27) == 3 ** 4 * 8
    assert residue_unit_count(order, 8) == (2 ** 2 * 1) ** 2
    assert residue_unit_count(order, 11 ** 2) == (11 * 10) ** 2


def test_residue_unit_count_is_multiplicative() -> None:
    for disc in CLASS_NUMBER_ONE_DISCRIMINANTS:
        order = Order(disc)
        for m, n in ((3, 4), (5, 7), (8, 9), (7, 12)):
            assert residue_unit_count(order, m * n) == residue_unit_count(order, m) * residue_unit_count(order, n)


def test_unit_image_order() -> None:
    assert unit_image_order(Order(-7), 7) == 2
    assert unit_image_order(Order(-7), 2) == 1
    assert unit_image_order(Order(-3), 2) == 3
    assert unit_image_order(Order(-4), 5) == 4


def test_ray_class_degree() -> None:
    assert ray_class_degree(Order(-7), 7) == (21, 21)
    assert ray_class_degree(Order(-7), 1) == (1, 1)
    assert ray_class_degree(Order(-16), 2) == (2, 2)
    assert ray_class_degree(Order(-23), 1) == (1, 3)


def test_ray_class_degree_divides_along_moduli() -> None:
    for disc in (-7, -8, -12, -163):
        order = Order(disc)
        for n, m in ((2, 4), (3, 12), (5, 35), (7, 49)):
            small, _ = ray_class_degree(order, n)
            big, _ = ray_class_degree(order, m)
            assert big % small == 0


def test_residue_element_arithmetic() -> None:
    order = Order(-7)
    x = OrderResidueElement(order, 21, 4, 1)
    y = OrderResidueElement(order, 21, 2, 5)
    assert (x * y).norm() == (x.norm() * y.norm()) % 21
    assert (x * x.conjugate()).coords == (x.norm(), 0)
    assert x * x.inverse() == OrderResidueElement.one(order, 21)
    assert x * y == y * x


def test_non_unit_has_no_inverse() -> None:
    order = Order(-7)
    z = OrderResidueElement(order, 7, 0, 1)  # ω 的范数是 14
    assert not z.is_unit()
    with pytest.raises(ValueError):
        z.inverse()


def test_mixed_moduli_are_rejected() -> None:
    order = Order(-7)
    with pytest.raises(ValueError):
        OrderResidueElement(order, 7, 1, 1) * OrderResidueElement(order, 5, 1, 1)


def test_split_type_and_special_prime() -> None:
    order = Order(-7)
    assert split_type(order, 2) == "split"
    assert split_type(order, 3) == "inert"
    assert split_type(order, 7) == "ramified"
    assert split_type(Order(-28), 2) == "ramified"
    assert special_prime(Order(-28)) == 7
    assert special_prime(Order(-16)) == 2
    assert special_prime(Order(-12)) == 3
    assert special_prime(Order(-8)) == 2
    assert special_prime(Order(-163)) == 163
