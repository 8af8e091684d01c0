from __future__ import annotations

import random

import pytest
from sympy import primerange

from cm_entangle.engines.entangle_engine import classify, hecke_conductor_norm, n_of_order
from cm_entangle.engines.frobenius_engine import LABEL_FULL, LABEL_PROBABLE, image_subgroup, residue_units_bruteforce
from cm_entangle.models.cm_registry import CMCurveRegistry
from cm_entangle.models.formal_group import FormalGroupLaw, multiplication_by_m, reduced_height
from cm_entangle.models.quad_orders import CLASS_NUMBER_ONE_DISCRIMINANTS, Order, residue_unit_count, special_prime
from cm_entangle.models.weierstrass import Curve, conductor, is_good_prime, quadratic_twist
from cm_entangle.utils.arith import kronecker, squarefree_part
from cm_entangle.utils.series import TruncatedSeries

pytestmark = pytest.mark.slow

FORMAL_GROUP_CURVES = [
    (1, -1, 0, -2, -1),
    (0, -1, 0, -3, -1),
    (0, 0, 1, -38, 90),
    (0, 0, 0, -44, -112),
    (0, 0, 0, -15, 22),
]

TWIST_FACTORS = [5, -3, 13, -11, 17, 3, -5, 6, -15, 10, 21, -19]


def test_registry_reproduction(registry: CMCurveRegistry) -> None:
    for entry in registry.entries():
        for curve, stored in zip(entry.curves, entry.conductors):
            assert curve.j == entry.j
            assert conductor(curve).conductor == stored
    assert conductor(Curve((1, -1, 0, -2, -1))).conductor == 49
    for curve in registry.twist_minimal_curves(Order(-163)):
        assert conductor(curve).conductor == 26569
        assert curve.j == -(2 ** 18) * 3 ** 3 * 5 ** 3 * 23 ** 3 * 29 ** 3


def test_residue_units_formula_against_enumeration() -> None:
    for disc in CLASS_NUMBER_ONE_DISCRIMINANTS:
        order = Order(disc)
        for n in range(1, 61):
            assert residue_units_bruteforce(order, n)[0] == residue_unit_count(order, n), (disc, n)


@pytest.mark.parametrize("ainvs", FORMAL_GROUP_CURVES)
def test_formal_group_laws(ainvs) -> None:
    curve = Curve(ainvs)
    fg = FormalGroupLaw(curve, 12)
    for m, k in ((2, 3), (3, -2), (4, 3)):
        assert multiplication_by_m(fg, m).compose(multiplication_by_m(fg, k)) == multiplication_by_m(fg, m * k)
    small = FormalGroupLaw(curve, 8)
    x, y, z = (TruncatedSeries.variable(i, 3, 8) for i in range(3))
    assert small.add(small.add(x, y), z) == small.add(x, small.add(y, z))


def test_height_matches_splitting(registry: CMCurveRegistry) -> None:
    for order, curve in registry.all_curves(supported_only=True):
        for p in primerange(2, 20):
            p = int(p)
            if not is_good_prime(curve, p):
                continue
            result = reduced_height(curve, p, p * p + 2)
            assert (result.h == 2) == (kronecker(order.fund_disc, p) == -1), (curve, p)
            assert result.method == ("series" if p <= 7 else "trace")


def test_minimal_image_at_special_prime(registry: CMCurveRegistry) -> None:
    for order, curve in registry.all_curves(supported_only=True):
        p = special_prime(order)
        modulus = p ** (n_of_order(order) - 1)
        subgroup = image_subgroup(curve, order, modulus, 10 ** 4)
        assert subgroup.index == 2, (curve, modulus)
        assert not subgroup.contains_minus_one
        assert subgroup.label == LABEL_PROBABLE
        f_e = conductor(curve).conductor
        for q in (3, 5):
            if f_e % q:
                assert image_subgroup(curve, order, q, 10 ** 4).label == LABEL_FULL, (curve, q)


def test_twist_by_five_of_conductor_49(curve49_twist5: Curve) -> None:
    report = classify(curve49_twist5)
    assert report.bad_primes == (5, 7)
    assert not report.disjoint_over_K
    assert report.entanglement["p_level_field"] == "K(E[7^m]) = H_{7^m,O}(√5)"
    subgroup = image_subgroup(curve49_twist5, Order(-7), 7, 10 ** 4)
    assert subgroup.size == 42
    assert subgroup.label == LABEL_FULL


def test_disjointness_verdict(registry: CMCurveRegistry) -> None:
    applicable = registry.all_curves(supported_only=True)
    for _, curve in applicable:
        assert classify(curve, registry).disjoint_over_K

    rng = random.Random(2024)
    checked = 0
    while checked < 20:
        order, curve = rng.choice(applicable)
        d = rng.choice(TWIST_FACTORS)
        if d == squarefree_part(order.fund_disc):
            continue
        assert not classify(quadratic_twist(curve, d), registry).disjoint_over_K, (curve, d)
        checked += 1


def test_hecke_conductor_norms(registry: CMCurveRegistry) -> None:
    for order, curve in registry.all_curves(supported_only=True):
        assert hecke_conductor_norm(curve, order) >= 1
    assert hecke_conductor_norm(Curve((1, -1, 0, -2, -1)), Order(-7)) == 7
    assert hecke_conductor_norm(Curve((0, 0, 1, -30, 63)), Order(-27)) == 9
