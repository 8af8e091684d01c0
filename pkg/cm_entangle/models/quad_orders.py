"""
虚二次序：判别式分解、单位群、约化二元二次型、剩余单位群阶与射线类域次数
"""

from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, NamedTuple, Tuple

from ..utils.arith import factorize, is_fundamental_discriminant, kronecker, squarefree_part

# 类数为1的十三个虚二次序的判别式
CLASS_NUMBER_ONE_DISCRIMINANTS = (-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163)


class Order:
    """
    判别式为disc的虚二次序 O = Z + Zω，ω = (disc + √disc)/2

    Args:
        disc: 负判别式 Δ_O ≡ 0, 1 mod 4
    """

    __slots__ = ("disc", "fund_disc", "conductor", "unit_order")

    def __init__(self, disc: int):
        if disc >= 0:
            raise ValueError(f"虚二次序的判别式必须为负: {disc}")
        if disc % 4 not in (0, 1):
            raise ValueError(f"判别式必须 ≡ 0 或 1 mod 4: {disc}")
        core = squarefree_part(disc)
        fund = core if core % 4 == 1 else 4 * core
        f2, rem = divmod(disc, fund)
        f = isqrt(f2)
        if rem or f * f != f2 or not is_fundamental_discriminant(fund):
            raise RuntimeError(f"判别式分解失败: {disc}")
        self.disc = disc
        self.fund_disc = fund
        self.conductor = f
        self.unit_order = 6 if disc == -3 else 4 if disc == -4 else 2

    @property
    def omega_norm(self) -> int:
        """ω的范数 (Δ² - Δ)/4，ω满足 x² - Δx + (Δ² - Δ)/4 = 0"""
        return (self.disc * self.disc - self.disc) // 4

    @property
    def is_maximal(self) -> bool:
        return self.conductor == 1

    def maximal_order(self) -> "Order":
        return Order(self.fund_disc)

    def units(self) -> List[Tuple[int, int]]:
        """O^× 的全部元素，以基 {1, ω} 下的坐标 (u, v) 给出"""
        if self.disc == -4:
            # ω = -2 + i
            return [(1, 0), (-1, 0), (2, 1), (-2, -1)]
        if self.disc == -3:
            # ω = (-3 + √-3)/2，ζ₃ = ω + 1，ζ₃² = -2 - ω
            return [(1, 0), (-1, 0), (1, 1), (-1, -1), (-2, -1), (2, 1)]
        return [(1, 0), (-1, 0)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Order) and other.disc == self.disc

    def __hash__(self) -> int:
        return hash(("Order", self.disc))

    def __repr__(self) -> str:
        return f"Order(disc={self.disc}, fund_disc={self.fund_disc}, conductor={self.conductor})"

    def to_dict(self) -> Dict:
        return {
            "disc": self.disc,
            "fund_disc": self.fund_disc,
            "conductor": self.conductor,
            "unit_order": self.unit_order,
        }


class ClassGroupData(NamedTuple):
    """类数与约化本原二次型列表"""
    h: int
    forms: List[Tuple[int, int, int]]


class OrderResidueElement:
    """
    O/NO 中的元素 u + vω

    Args:
        order: 所属的序
        modulus: 模数N
        u, v: 坐标（会约化到 [0, N)）
    """

    __slots__ = ("order", "modulus", "coords")

    def __init__(self, order: Order, modulus: int, u: int, v: int):
        if modulus < 1:
            raise ValueError(f"模数必须为正: {modulus}")
        self.order = order
        self.modulus = modulus
        self.coords = (u % modulus, v % modulus)

    @classmethod
    def one(cls, order: Order, modulus: int) -> "OrderResidueElement":
        return cls(order, modulus, 1, 0)

    def _check(self, other: "OrderResidueElement"):
        if other.order != self.order or other.modulus != self.modulus:
            raise ValueError("不同的序或模数之间不能运算")

    def __mul__(self, other: "OrderResidueElement") -> "OrderResidueElement":
        self._check(other)
        u1, v1 = self.coords
        u2, v2 = other.coords
        d = self.order.disc
        nrm = self.order.omega_norm
        return OrderResidueElement(
            self.order, self.modulus,
            u1 * u2 - v1 * v2 * nrm,
            u1 * v2 + u2 * v1 + v1 * v2 * d,
        )

    def norm(self) -> int:
        """范数 u² + uvΔ + v²(Δ² - Δ)/4 mod N"""
        u, v = self.coords
        return (u * u + u * v * self.order.disc + v * v * self.order.omega_norm) % self.modulus

    def conjugate(self) -> "OrderResidueElement":
        """共轭 u + vω̄ = (u + vΔ) - vω"""
        u, v = self.coords
        return OrderResidueElement(self.order, self.modulus, u + v * self.order.disc, -v)

    def is_unit(self) -> bool:
        return gcd(self.norm(), self.modulus) == 1

    def inverse(self) -> "OrderResidueElement":
        """逆元 = 共轭 · 范数^{-1}"""
        if not self.is_unit():
            raise ValueError(f"{self} 在 O/{self.modulus}O 中不可逆")
        if self.modulus == 1:
            return self
        inv = pow(self.norm(), -1, self.modulus)
        u, v = self.conjugate().coords
        return OrderResidueElement(self.order, self.modulus, u * inv, v * inv)

    def __eq__(self, other) -> bool:
        return (isinstance(other, OrderResidueElement) and other.order == self.order
                and other.modulus == self.modulus and other.coords == self.coords)

    def __hash__(self) -> int:
        return hash((self.order.disc, self.modulus, self.coords))

    def __repr__(self) -> str:
        u, v = self.coords
        return f"({u} + {v}ω mod {self.modulus})"


def order_from_discriminant(disc: int) -> Order:
    """
    把判别式分解为 f²·Δ_K 并构造序

    Args:
        disc: 负整数，≡ 0 或 1 mod 4

    Returns:
        Order: 对应的虚二次序
    """
    return Order(disc)


def class_number_by_forms(order: Order) -> ClassGroupData:
    """
    枚举判别式为Δ_O的全部约化本原正定二次型 (a, b, c)

    约化条件：|b| ≤ a ≤ c，且 |b| = a 或 a = c 时 b ≥ 0。
    """
    disc = order.disc
    forms = []
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return ClassGroupData(h=len(forms), forms=forms)


def class_number_by_formula(order: Order) -> int:
    """
    序的类数公式 h_O = h_K·f / [O_K^×:O^×] · ∏_{p|f} (1 - (Δ_K/p)/p)
    """
    maximal = order.maximal_order()
    h_k = class_number_by_forms(maximal).h
    f = order.conductor
    value = Fraction(h_k * f, maximal.unit_order // order.unit_order)
    if f > 1:
        for p, _ in factorize(f):
            value *= 1 - Fraction(kronecker(order.fund_disc, p), p)
    if value.denominator != 1:
        raise RuntimeError(f"类数公式给出非整数: {value} (Δ={order.disc})")
    return int(value)


def residue_unit_count(order: Order, modulus: int) -> int:
    """
    |(O/NO)^×| = ∏_{p^k || N} p^{2k-2}·(p - χ(p))·(p - 1)，χ(p) = (Δ_O/p)

    Args:
        order: 序
        modulus: 正整数N

    Returns:
        int: 剩余单位群的阶
    """
    if modulus < 1:
        raise ValueError(f"模数必须为正: {modulus}")
    count = 1
    if modulus == 1:
        return count
    for p, k in factorize(modulus):
        chi = kronecker(order.disc, p)
        count *= p ** (2 * k - 2) * (p - chi) * (p - 1)
    return count


def unit_image_order(order: Order, modulus: int) -> int:
    """O^× 在 (O/NO)^× 中像的大小"""
    if modulus < 1:
        raise ValueError(f"模数必须为正: {modulus}")
    images = {(u % modulus, v % modulus) for u, v in order.units()}
    return len(images)


def ray_class_degree(order: Order, modulus: int) -> Tuple[int, int]:
    """
    模N射线类域的次数

    Returns:
        Tuple[int, int]: ([H_{N,O}:H_O], [H_{N,O}:K])
    """
    residues = residue_unit_count(order, modulus)
    units = unit_image_order(order, modulus)
    if residues % units:
        raise RuntimeError(f"单位像的阶 {units} 不整除 {residues}")
    over_ring_class = residues // units
    return over_ring_class, over_ring_class * class_number_by_forms(order).h


def split_type(order: Order, p: int) -> str:
    """素数p在序中的分解类型：split / inert / ramified（p | Δ_O）"""
    chi = kronecker(order.disc, p)
    return {1: "split", -1: "inert", 0: "ramified"}[chi]


def special_prime(order: Order) -> int:
    """K中唯一分歧的素数（类数为1的基本判别式都是素判别式）"""
    primes = [p for p, _ in factorize(order.fund_disc)]
    if len(primes) != 1:
        raise ValueError(f"Δ_K = {order.fund_disc} 有多个分歧素数")
    return primes[0]
