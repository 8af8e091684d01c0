"""
Q上的Weierstrass模型：不变量、同构与二次扭、整体极小模型、Tate算法（导子）以及F_p上的点计数
"""

import json
from functools import lru_cache
from fractions import Fraction
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from ..utils.arith import factorize, is_squarefree, squarefree_part, valuation

AInvariants = Tuple[int, int, int, int, int]

# 逐点计数时，超过此界的素数拒绝计算
POINT_COUNT_PRIME_LIMIT = 10 ** 7


def _b_invariants(a: Sequence[int]) -> Tuple[int, int, int, int]:
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _discriminant(a: Sequence[int]) -> int:
    b2, b4, b6, b8 = _b_invariants(a)
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


class Curve:
    """
    长Weierstrass模型 y² + a1xy + a3y = x³ + a2x² + a4x + a6，整数系数

    构造时计算全部导出不变量；判别式为0时抛出ValueError。
    """

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8", "c4", "c6", "disc", "j")

    def __init__(self, ainvs: Sequence[int]):
        if len(ainvs) != 5:
            raise ValueError(f"需要5个系数 [a1,a2,a3,a4,a6]，实际为 {list(ainvs)}")
        coeffs = []
        for a in ainvs:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError(f"系数必须是整数: {a}")
                a = a.numerator
            if isinstance(a, bool) or not isinstance(a, (int, np.integer)):
                raise ValueError(f"系数必须是整数: {a!r}")
            coeffs.append(int(a))
        self.a1, self.a2, self.a3, self.a4, self.a6 = coeffs
        self.b2, self.b4, self.b6, self.b8 = _b_invariants(coeffs)
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = _discriminant(coeffs)
        if self.disc == 0:
            raise ValueError(f"奇异曲线（判别式为0）: {coeffs}")
        if 1728 * self.disc != self.c4 ** 3 - self.c6 ** 2:
            raise RuntimeError(f"不变量不满足 1728Δ = c4³ - c6²: {coeffs}")
        self.j = Fraction(self.c4 ** 3, self.disc)

    @property
    def ainvs(self) -> AInvariants:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @classmethod
    def from_text(cls, text: str) -> "Curve":
        """解析 "[a1,a2,a3,a4,a6]" 格式的文本"""
        try:
            values = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"无法解析曲线 {text!r}: {e}")
        if not isinstance(values, list):
            raise ValueError(f"曲线必须是5个整数组成的数组: {text!r}")
        return cls(values)

    def to_text(self) -> str:
        return json.dumps(list(self.ainvs), separators=(",", ":"))

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and other.ainvs == self.ainvs

    def __hash__(self) -> int:
        return hash(("Curve", self.ainvs))

    def __repr__(self) -> str:
        return f"Curve({list(self.ainvs)})"

    def change_coordinates(self, u: int, r: int, s: int, t: int) -> "Curve":
        """
        坐标变换 x = u²x' + r, y = u³y' + su²x' + t，要求结果仍为整数模型
        """
        new = _transform(self.ainvs, r, s, t, u)
        return Curve(new)


class LocalData(NamedTuple):
    """某个坏素数处的局部约化数据"""
    prime: int
    kodaira: str
    conductor_exponent: int
    disc_valuation: int


class ConductorData(NamedTuple):
    """导子及每个坏素数的局部数据"""
    conductor: int
    local_data: Tuple[LocalData, ...]
    minimal_model: Curve

    def to_dict(self) -> Dict:
        return {
            "conductor": self.conductor,
            "minimal_model": list(self.minimal_model.ainvs),
            "local_data": [
                {
                    "prime": ld.prime,
                    "kodaira": ld.kodaira,
                    "conductor_exponent": ld.conductor_exponent,
                    "disc_valuation": ld.disc_valuation,
                }
                for ld in self.local_data
            ],
        }


def _transform(a: Sequence[int], r: int, s: int, t: int, u: int = 1) -> AInvariants:
    """标准的 [u, r, s, t] 变换；u ≠ 1 时结果必须整除"""
    a1, a2, a3, a4, a6 = a
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1
    if u == 1:
        return (n1, n2, n3, n4, n6)
    out = []
    for value, weight in zip((n1, n2, n3, n4, n6), (1, 2, 3, 4, 6)):
        q, rem = divmod(value, u ** weight)
        if rem:
            raise ValueError(f"坐标变换 u={u} 产生非整数系数")
        out.append(q)
    return tuple(out)


def invariants(c: Curve) -> Tuple[int, int, int, Fraction]:
    """
    返回 (c4, c6, Δ, j)

    Args:
        c: 曲线

    Returns:
        Tuple: c4, c6, 判别式, j不变量（有理数）
    """
    return c.c4, c.c6, c.disc, c.j


# ----------------------------------------------------------------------
# Tate算法
# ----------------------------------------------------------------------
def _tate(ainvs: Sequence[int], p: int) -> Tuple[LocalData, AInvariants]:
    """
    p处的Tate算法（包括p = 2, 3）

    Args:
        ainvs: 整数模型
        p: 素数

    Returns:
        Tuple[LocalData, AInvariants]: 局部数据与p处极小的整数模型
    """
    a = tuple(ainvs)

    def div(x: int, k: int) -> bool:
        return x % p ** k == 0

    def root(x: int) -> int:
        # F_p中 x^(1/p) = x，只在 p = 2, 3 时用于开平方/开立方
        return x % p

    def inv(x: int) -> int:
        return pow(x % p, -1, p)

    half = None if p == 2 else inv(2)

    while True:
        a1, a2, a3, a4, a6 = a
        b2, b4, b6, b8 = _b_invariants(a)
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
        vd = valuation(_discriminant(a), p)
        if vd == 0:
            return LocalData(p, "I0", 0, 0), a

        # 平移使得 p | a3, a4, a6
        if p == 2:
            if div(b2, 1):
                r = root(a4)
                t = root(((r + a2) * r + a4) * r + a6)
            else:
                temp = inv(a1)
                r = temp * a3
                t = temp * (a4 + r * r)
        elif p == 3:
            if div(b2, 1):
                r = root(-b6)
            else:
                r = -inv(b2) * b4
            t = a1 * r + a3
        else:
            if div(c4, 1):
                r = -inv(12) * b2
            else:
                r = -inv(12 * c4) * (c6 + b2 * c4)
            t = -half * (a1 * r + a3)
        a = _transform(a, r % p, 0, t % p)
        a1, a2, a3, a4, a6 = a
        b2, b4, b6, b8 = _b_invariants(a)

        if not div(b2, 1):
            return LocalData(p, f"I{vd}", 1, vd), a
        if not div(a6, 2):
            return LocalData(p, "II", vd, vd), a
        if not div(b8, 3):
            return LocalData(p, "III", vd - 1, vd), a
        if not div(b6, 3):
            return LocalData(p, "IV", vd - 2, vd), a

        # 平移使得 p | a1, a2；p² | a3, a4；p³ | a6
        if p == 2:
            s = root(a2)
            t = 2 * root(a6 // 4)
        elif p == 3:
            s = a1
            t = a3
        else:
            s = -a1 * half
            t = -a3 * half
        a = _transform(a, 0, s, t)
        a1, a2, a3, a4, a6 = a

        # 三次多项式 T³ + (a2/p)T² + (a4/p²)T + a6/p³
        b = a2 // p
        c = a4 // p ** 2
        d = a6 // p ** 3
        w = 27 * d * d - b * b * c * c + 4 * b ** 3 * d - 18 * b * c * d + 4 * c ** 3
        x = 3 * c - b * b
        if not div(w, 1):
            return LocalData(p, "I0*", vd - 4, vd), a

        if not div(x, 1):
            # 二重根：平移到T = 0，进入I_m*子循环
            if p == 2:
                r = root(c)
            elif p == 3:
                r = c * inv(b)
            else:
                r = (b * c - 9 * d) * inv(2 * x)
            a = _transform(a, p * (r % p), 0, 0)
            ix, iy = 3, 3
            mx, my = p * p, p * p
            while True:
                a1, a2, a3, a4, a6 = a
                a2t = a2 // p
                a3t = a3 // my
                a6t = a6 // (mx * my)
                if not div(a3t * a3t + 4 * a6t, 1):
                    break
                if p == 2:
                    t = my * root(a6t)
                else:
                    t = my * ((-a3t * half) % p)
                a = _transform(a, 0, 0, t)
                a1, a2, a3, a4, a6 = a
                my *= p
                iy += 1
                a2t = a2 // p
                a4t = a4 // (p * mx)
                a6t = a6 // (mx * my)
                if not div(a4t * a4t - 4 * a6t * a2t, 1):
                    break
                if p == 2:
                    r = mx * root(a6t * inv(a2t))
                else:
                    r = mx * ((-a4t * inv(2 * a2t)) % p)
                a = _transform(a, r, 0, 0)
                mx *= p
                ix += 1
            m = ix + iy - 5
            return LocalData(p, f"I{m}*", vd - m - 4, vd), a

        # 三重根：平移到T = 0
        if p == 2:
            r = b
        elif p == 3:
            r = root(-d)
        else:
            r = -b * inv(3)
        a = _transform(a, p * (r % p), 0, 0)
        a1, a2, a3, a4, a6 = a
        a3t = a3 // p ** 2
        a6t = a6 // p ** 4
        if not div(a3t * a3t + 4 * a6t, 1):
            return LocalData(p, "IV*", vd - 6, vd), a
        if p == 2:
            t = -(p ** 2) * root(a6t)
        else:
            t = p ** 2 * ((-a3t * half) % p)
        a = _transform(a, 0, 0, t)
        a1, a2, a3, a4, a6 = a
        if not div(a4, 4):
            return LocalData(p, "III*", vd - 7, vd), a
        if not div(a6, 6):
            return LocalData(p, "II*", vd - 8, vd), a
        # 模型在p处不是极小的：除以p的相应幂次后重新开始
        a = (a1 // p, a2 // p ** 2, a3 // p ** 3, a4 // p ** 4, a6 // p ** 6)


def _reduce_model(a: Sequence[int]) -> AInvariants:
    """规范化：a1, a3 ∈ {0, 1}，a2 ∈ {-1, 0, 1}"""
    a1, a2, a3, _, _ = a
    s = -(a1 // 2)
    r = -((a2 - s * a1 - s * s + 1) // 3)
    t = -((a3 + r * a1) // 2)
    return _transform(a, r, s, t)


@lru_cache(maxsize=1024)
def minimal_model(c: Curve) -> Curve:
    """
    整体极小模型（Laska-Kraus-Connell意义下的规范化形式）

    对每个满足 v_p(Δ) >= 12 的素数运行Tate算法得到p处极小模型，
    所用的平移都是整数平移，因此其他素数处的整性保持不变。
    """
    a = c.ainvs
    for p, e in factorize(c.disc):
        if e >= 12:
            _, a = _tate(a, p)
    return Curve(_reduce_model(a))


@lru_cache(maxsize=1024)
def conductor(c: Curve) -> ConductorData:
    """
    用Tate算法计算导子，同时给出每个坏素数的Kodaira符号

    Args:
        c: 整数模型

    Returns:
        ConductorData: 导子、局部数据、规范化的极小模型
    """
    model = minimal_model(c)
    total = 1
    local = []
    for p, _ in factorize(model.disc):
        data, _ = _tate(model.ainvs, p)
        local.append(data)
        total *= p ** data.conductor_exponent
    return ConductorData(total, tuple(local), model)


# ----------------------------------------------------------------------
# 二次扭
# ----------------------------------------------------------------------
def quadratic_twist(c: Curve, d: int) -> Curve:
    """
    二次扭 E^(d)，返回规范化的极小模型

    先化为 y² = x³ - 27c4·x - 54c6，再换为 y² = x³ - 27c4·d²x - 54c6·d³。

    Args:
        c: 曲线
        d: 非零无平方整数

    Returns:
        Curve: E^(d) 的极小模型；d = 1 时直接返回c
    """
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"扭参数必须是非零无平方整数: {d}")
    if d == 1:
        return c
    twisted = Curve((0, 0, 0, -27 * c.c4 * d * d, -54 * c.c6 * d ** 3))
    return minimal_model(twisted)


def twist_factor(c1: Curve, c2: Curve) -> Optional[int]:
    """
    求无平方整数d使得 c2 ≅_Q c1^(d)

    d 为 (c6(c2)/c6(c1))·(c4(c1)/c4(c2)) 的无平方部分；
    若该比值与两个c不变量比值不相容则返回None。
    """
    if c1.j != c2.j:
        raise ValueError(f"j不变量不同: {c1.j} 与 {c2.j}")
    if c1.j in (0, 1728):
        raise ValueError("j ∈ {0, 1728} 的曲线有四次或六次扭，不能用二次扭比较")
    ratio = Fraction(c2.c6, c1.c6) * Fraction(c1.c4, c2.c4)
    if ratio ** 2 != Fraction(c2.c4, c1.c4) or ratio ** 3 != Fraction(c2.c6, c1.c6):
        return None
    return squarefree_part(ratio.numerator * ratio.denominator)


# ----------------------------------------------------------------------
# 点计数
# ----------------------------------------------------------------------
def _require_good_prime(c: Curve, p: int) -> Curve:
    if not isprime(p):
        raise ValueError(f"{p} 不是素数")
    model = minimal_model(c)
    if model.disc % p == 0:
        raise ValueError(f"曲线在 p = {p} 处坏约化")
    return model


def count_points(c: Curve, p: int) -> int:
    """
    |Ẽ(F_p)|，包括无穷远点

    奇素数时把方程配方为 (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6，
    用numpy对全部x向量化计算Legendre符号。
    """
    model = _require_good_prime(c, p)
    if p > POINT_COUNT_PRIME_LIMIT:
        raise ValueError(f"素数 {p} 超过点计数上限 {POINT_COUNT_PRIME_LIMIT}")
    if p == 2:
        a1, a2, a3, a4, a6 = (x % 2 for x in model.ainvs)
        affine = sum(
            1
            for x in range(2)
            for y in range(2)
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0
        )
        return affine + 1
    xs = np.arange(p, dtype=np.int64)
    coeffs = [4 % p, model.b2 % p, (2 * model.b4) % p, model.b6 % p]
    values = np.zeros(p, dtype=np.int64)
    for coeff in coeffs:
        values = (values * xs + coeff) % p
    squares = np.zeros(p, dtype=bool)
    squares[(xs * xs) % p] = True
    solutions = np.where(values == 0, 1, np.where(squares[values], 2, 0))
    return int(solutions.sum()) + 1


def trace_of_frobenius(c: Curve, p: int) -> int:
    """a_p = p + 1 - |Ẽ(F_p)|，并检查Hasse界"""
    a = p + 1 - count_points(c, p)
    if a * a > 4 * p:
        raise RuntimeError(f"a_{p} = {a} 违反Hasse界")
    return a


def is_supersingular(c: Curve, p: int) -> bool:
    """好约化素数p处是否超奇异（a_p ≡ 0 mod p）"""
    return trace_of_frobenius(c, p) % p == 0


def is_good_prime(c: Curve, p: int) -> bool:
    return minimal_model(c).disc % p != 0

