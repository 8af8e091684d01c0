"""
Frobenius验证器

在分裂的好约化素数q处由点计数得到a_q，解 4q = a_q² + |Δ_O|·b² 得到Frobenius元π，
把π与π̄在 (O/NO)^× 中生成的子群作为 ρ_{E,N} 像的下界。
"""

from math import gcd, isqrt
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import isprime, primerange

from . import GaloisImageEngine
from ..models.cm_registry import CMCurveRegistry, get_registry
from ..models.quad_orders import (
    Order,
    OrderResidueElement,
    class_number_by_forms,
    residue_unit_count,
)
from ..models.weierstrass import Curve, conductor, minimal_model, trace_of_frobenius
from ..utils.arith import kronecker
from ..utils.logger import Logger

logger = Logger("FrobeniusOracle")

BRUTEFORCE_LIMIT = 200
IMAGE_MODULUS_LIMIT = 200
PRIME_BOUND_LIMIT = 10 ** 5
DEFAULT_PRIME_BOUND = 10000

# 连续这么多个分裂素数没有带来新元素时视为稳定
STABILIZATION_WINDOW = 50

LABEL_FULL = "proven full image"
LABEL_PROBABLE = "probable image"
LABEL_LOWER_BOUND = "lower bound"


def residue_units_bruteforce(order: Order, modulus: int) -> Tuple[int, List[OrderResidueElement]]:
    """
    枚举全部N²个剩余类 u + vω，用范数判断可逆性

    Args:
        order: 序
        modulus: 模数N，不超过BRUTEFORCE_LIMIT

    Returns:
        Tuple[int, List[OrderResidueElement]]: 单位个数与单位列表
    """
    if modulus < 1:
        raise ValueError(f"模数必须为正: {modulus}")
    if modulus > BRUTEFORCE_LIMIT:
        raise ValueError(f"模数 {modulus} 超过枚举上限 {BRUTEFORCE_LIMIT}")
    if modulus == 1:
        return 1, [OrderResidueElement.one(order, 1)]
    u, v = np.meshgrid(np.arange(modulus, dtype=np.int64), np.arange(modulus, dtype=np.int64), indexing="ij")
    disc = order.disc % modulus
    nrm = order.omega_norm % modulus
    norms = (u * u + (u * v % modulus) * disc + (v * v % modulus) * nrm) % modulus
    mask = np.gcd(norms, modulus) == 1
    units = [OrderResidueElement(order, modulus, int(a), int(b)) for a, b in zip(u[mask], v[mask])]
    return len(units), units


def frobenius_element(c: Curve, order: Order, q: int, modulus: int) -> Tuple[OrderResidueElement, OrderResidueElement]:
    """
    分裂素数q处的Frobenius元 π = (a_q - bΔ)/2 + bω 及其共轭

    Args:
        c: CM曲线
        order: 曲线的CM序（类数为1）
        q: 好约化的分裂素数，与N互素
        modulus: 模数N

    Returns:
        Tuple[OrderResidueElement, OrderResidueElement]: (π, π̄) mod N
    """
    if not isprime(q):
        raise ValueError(f"{q} 不是素数")
    if gcd(q, modulus) != 1:
        raise ValueError(f"q = {q} 与模数 {modulus} 不互素")
    if kronecker(order.disc, q) != 1:
        raise ValueError(f"q = {q} 在 Δ_O = {order.disc} 中不分裂")
    if class_number_by_forms(order).h != 1:
        raise ValueError(f"序 Δ_O = {order.disc} 的类数不为1")

    # a_q 的符号只取自点计数
    a = trace_of_frobenius(c, q)
    d = -order.disc
    rest = 4 * q - a * a
    for b in range(1, isqrt(4 * q // d) + 1):
        if d * b * b == rest:
            break
    else:
        raise RuntimeError(f"4·{q} - a_q² = {rest} 不是 |Δ_O|·b² 的形式，曲线的CM序不是 {order.disc}")
    pi = OrderResidueElement(order, modulus, (a + b * d) // 2, b)
    conj = pi.conjugate()
    if pi.norm() != q % modulus:
        raise RuntimeError(f"N(π) ≢ {q} mod {modulus}")
    return pi, conj


class ImageSubgroup:
    """
    由Frobenius元生成的 (O/NO)^× 的子群

    Args:
        order: 序
        modulus: 模数N
    """

    def __init__(self, order: Order, modulus: int):
        self.order = order
        self.modulus = modulus
        self.generators: List[OrderResidueElement] = []
        self.elements = {OrderResidueElement.one(order, modulus)}
        self.full_order = residue_unit_count(order, modulus)
        self.primes_used = 0
        self.last_prime: Optional[int] = None
        self.stabilized = False

    def add(self, g: OrderResidueElement) -> bool:
        """把g并入子群（交换群的陪集扩张），返回子群是否变大"""
        if g in self.elements:
            return False
        group = set(self.elements)
        power = g
        while power not in self.elements:
            group.update(h * power for h in self.elements)
            power = power * g
        self.elements = group
        self.generators.append(g)
        if self.full_order % len(self.elements):
            raise RuntimeError(f"子群阶 {len(self.elements)} 不整除 {self.full_order}")
        return True

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.full_order // self.size

    @property
    def contains_minus_one(self) -> bool:
        return OrderResidueElement(self.order, self.modulus, -1, 0) in self.elements

    @property
    def certified_full(self) -> bool:
        return self.size == self.full_order

    @property
    def label(self) -> str:
        if self.certified_full:
            return LABEL_FULL
        return LABEL_PROBABLE if self.stabilized else LABEL_LOWER_BOUND

    def to_dict(self) -> Dict:
        return {
            "modulus": self.modulus,
            "order_disc": self.order.disc,
            "size": self.size,
            "full_order": self.full_order,
            "index": self.index,
            "contains_minus_one": self.contains_minus_one,
            "generators": [list(g.coords) for g in self.generators],
            "primes_used": self.primes_used,
            "last_prime": self.last_prime,
            "stabilized": self.stabilized,
            "label": self.label,
        }


def image_subgroup(c: Curve, order: Order, modulus: int, prime_bound: int = DEFAULT_PRIME_BOUND) -> ImageSubgroup:
    """
    用不超过prime_bound的分裂好素数的Frobenius元生成像的子群

    达到整个 (O/NO)^× 时停止（已证明）；连续STABILIZATION_WINDOW个分裂素数
    没有新元素时也停止（可能的像）。

    Args:
        c: CM曲线
        order: 曲线的CM序
        modulus: 模数N，不超过IMAGE_MODULUS_LIMIT
        prime_bound: 素数上界，不超过PRIME_BOUND_LIMIT

    Returns:
        ImageSubgroup: 像的下界
    """
    if modulus < 1 or modulus > IMAGE_MODULUS_LIMIT:
        raise ValueError(f"模数须在 1..{IMAGE_MODULUS_LIMIT} 之间: {modulus}")
    if prime_bound < 2 or prime_bound > PRIME_BOUND_LIMIT:
        raise ValueError(f"素数上界须在 2..{PRIME_BOUND_LIMIT} 之间: {prime_bound}")
    model = minimal_model(c)
    excluded = modulus * order.conductor * conductor(model).conductor
    subgroup = ImageSubgroup(order, modulus)
    quiet = 0
    for q in primerange(2, prime_bound + 1):
        if subgroup.certified_full or quiet >= STABILIZATION_WINDOW:
            break
        q = int(q)
        if excluded % q == 0 or kronecker(order.disc, q) != 1:
            continue
        pi, conj = frobenius_element(model, order, q, modulus)
        grew = subgroup.add(pi)
        grew = subgroup.add(conj) or grew
        subgroup.primes_used += 1
        subgroup.last_prime = q
        quiet = 0 if grew else quiet + 1
    subgroup.stabilized = subgroup.certified_full or quiet >= STABILIZATION_WINDOW
    logger.debug(
        f"N = {modulus}: |H| = {subgroup.size}/{subgroup.full_order}, "
        f"{subgroup.primes_used} 个素数, {subgroup.label}"
    )
    return subgroup


class FrobeniusEngine(GaloisImageEngine):
    """
    用Frobenius元实际测量 Gal(K(E[N])/K) 的阶
    """

    def __init__(self, registry: Optional[CMCurveRegistry] = None, prime_bound: int = DEFAULT_PRIME_BOUND):
        self.registry = registry or get_registry()
        self.prime_bound = prime_bound
        self.logger = Logger("FrobeniusEngine")

    def _order_of(self, curve: Curve) -> Order:
        order = self.registry.lookup_by_j(curve.j)
        if order is None:
            raise ValueError(f"j = {curve.j} 不在注册表中")
        return order

    def measure(self, curve: Curve, modulus: int) -> ImageSubgroup:
        return image_subgroup(curve, self._order_of(curve), modulus, self.prime_bound)

    def image_order(self, curve: Curve, modulus: int) -> Optional[int]:
        subgroup = self.measure(curve, modulus)
        return subgroup.size if subgroup.stabilized else None

    def describe(self, curve: Curve, modulus: int) -> Dict:
        return self.measure(curve, modulus).to_dict()
