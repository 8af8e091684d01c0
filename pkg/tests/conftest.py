from __future__ import annotations

import pytest

from cm_entangle.models.cm_registry import CMCurveRegistry, get_registry
from cm_entangle.models.weierstrass import Curve, quadratic_twist

# y² + xy = x³ - x² - 2x - 1，导子49，Δ_O = -7
CONDUCTOR_49 = (1, -1, 0, -2, -1)


@pytest.fixture(scope="session")
def registry() -> CMCurveRegistry:
    return get_registry()


@pytest.fixture(scope="session")
def curve49() -> Curve:
    return Curve(CONDUCTOR_49)


@pytest.fixture(scope="session")
def curve49_twist5(curve49: Curve) -> Curve:
    return quadratic_twist(curve49, 5)
