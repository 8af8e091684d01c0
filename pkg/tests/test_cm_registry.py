from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from cm_entangle.models.cm_registry import DEFAULT_REGISTRY_PATH, CMCurveRegistry
from cm_entangle.models.quad_orders import CLASS_NUMBER_ONE_DISCRIMINANTS, Order
from cm_entangle.models.weierstrass import Curve, quadratic_twist, twist_factor


def _write_registry(path: Path, lines: list[str]) -> str:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_bundled_registry_counts(registry: CMCurveRegistry) -> None:
    assert registry.data_path == DEFAULT_REGISTRY_PATH
    assert registry.curve_count() == 30
    assert registry.applicable_curve_count() == 26
    assert [o.disc for o in registry.orders()] == list(CLASS_NUMBER_ONE_DISCRIMINANTS)


def test_self_check_passes(registry: CMCurveRegistry) -> None:
    results = registry.self_check()
    assert len(results) == 30
    assert all(r["passed"] for r in results)


@pytest.mark.parametrize(
    ("j", "disc"),
    [(-3375, -7), (287496, -16), (54000, -12), (8000, -8), (0, -3), (1728, -4), (-262537412640768000, -163)],
)
def test_lookup_by_j(registry: CMCurveRegistry, j: int, disc: int) -> None:
    assert registry.lookup_by_j(j) == Order(disc)


def test_lookup_unknown_j(registry: CMCurveRegistry) -> None:
    assert registry.lookup_by_j(5) is None
    assert registry.lookup_by_j(Fraction(1, 2)) is None


def test_twist_minimal_curves(registry: CMCurveRegistry) -> None:
    assert len(registry.twist_minimal_curves(Order(-8))) == 4
    assert len(registry.twist_minimal_curves(Order(-7))) == 2
    z2i = registry.twist_minimal_curves(Order(-16))
    assert len(z2i) == 4
    assert Curve((0, 0, 0, -44, -112)) in z2i
    assert Curve((0, 0, 0, -44, 112)) in z2i
    with pytest.raises(ValueError):
        registry.twist_minimal_curves(Order(-100))


def test_rows_are_twists_by_the_field(registry: CMCurveRegistry) -> None:
    first, second = registry.twist_minimal_curves(Order(-12))
    assert twist_factor(first, second) == -3
    first, second = registry.twist_minimal_curves(Order(-7))
    assert twist_factor(first, second) == -7


def test_every_curve_maps_back_to_its_order(registry: CMCurveRegistry) -> None:
    for order, curve in registry.all_curves():
        assert registry.lookup_by_j(curve.j) == order
    assert len(registry.all_curves(supported_only=True)) == 26


def test_is_twist_minimal(registry: CMCurveRegistry, curve49: Curve) -> None:
    assert registry.is_twist_minimal(curve49) == (True, curve49)
    assert registry.is_twist_minimal(quadratic_twist(curve49, 5)) == (False, None)
    minimal, base = registry.is_twist_minimal(quadratic_twist(curve49, -7))
    assert minimal
    assert base in registry.twist_minimal_curves(Order(-7))


def test_is_twist_minimal_rejects_unsupported(registry: CMCurveRegistry) -> None:
    with pytest.raises(ValueError):
        registry.is_twist_minimal(Curve((0, 0, 0, -1, 0)))
    with pytest.raises(ValueError):
        registry.is_twist_minimal(Curve((0, 0, 1, -1, 0)))


def test_available_orders_listing(registry: CMCurveRegistry) -> None:
    orders = registry.get_available_orders()
    assert list(orders) == list(CLASS_NUMBER_ONE_DISCRIMINANTS)
    assert orders[-16]["name"] == "Z[2i]"
    assert registry.is_order_available(-163)
    assert not registry.is_order_available(-23)


def test_custom_registry_file(tmp_path: Path) -> None:
    path = _write_registry(tmp_path / "curves.txt", [
        "# 只有 Δ_K = -7",
        "-7 1 -3375 49 [1,-1,0,-2,-1]",
        "-7 1 -3375 49 [1,-1,0,-107,552]  # 第二条",
    ])
    custom = CMCurveRegistry(path)
    assert custom.curve_count() == 2
    assert custom.lookup_by_j(287496) is None


def test_registry_rejects_wrong_conductor(tmp_path: Path) -> None:
    path = _write_registry(tmp_path / "curves.txt", [
        "-7 1 -3375 50 [1,-1,0,-2,-1]",
        "-7 1 -3375 49 [1,-1,0,-107,552]",
    ])
    with pytest.raises(RuntimeError):
        CMCurveRegistry(path)
    failures = [r for r in CMCurveRegistry(path, verify=False).self_check() if not r["passed"]]
    assert len(failures) == 1
    assert failures[0]["conductor_ok"] is False


def test_registry_rejects_malformed_lines(tmp_path: Path) -> None:
    with pytest.raises(ValueError):
        CMCurveRegistry(_write_registry(tmp_path / "a.txt", ["-7 1 -3375 [1,-1,0,-2,-1]"]))
    with pytest.raises(ValueError):
        CMCurveRegistry(_write_registry(tmp_path / "b.txt", ["-7 x -3375 49 [1,-1,0,-2,-1]"]))
    with pytest.raises(ValueError):
        CMCurveRegistry(str(tmp_path / "missing.txt"))
