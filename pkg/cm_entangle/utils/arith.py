"""
整数算术内核：因式分解、Kronecker符号、无平方部分与判别式工具。

大整数运算直接使用Python的int与fractions.Fraction，素性判定与分解交给sympy。
"""

from math import isqrt
from typing import List, Tuple

from sympy import factorint, isprime
from sympy.ntheory import jacobi_symbol

# 因式分解结果：按素数升序排列的 (素数, 指数) 对
Factorization = List[Tuple[int, int]]


def factorize(n: int) -> Factorization:
    """
    计算|n|的标准因式分解

    Args:
        n: 非零整数

    Returns:
        Factorization: 按素数升序的 (p, e) 列表，|n| = 1 时为空列表
    """
    if n == 0:
        raise ValueError("无法分解0")
    factors = factorint(abs(n))
    result = sorted((int(p), int(e)) for p, e in factors.items())
    for p, _ in result:
        if not isprime(p):
            raise RuntimeError(f"分解结果包含非素数因子: {p}")
    return result


def prime_divisors(n: int) -> List[int]:
    """返回|n|的素因子列表（升序）"""
    return [p for p, _ in factorize(n)]


def valuation(n: int, p: int) -> int:
    """p进赋值v_p(n)，n必须非零"""
    if n == 0:
        raise ValueError("0的赋值为无穷大")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def kronecker(a: int, n: int) -> int:
    """
    Kronecker符号(a|n)

    在2处采用 (a|2) = 0 (a为偶数), 1 (a ≡ ±1 mod 8), -1 (a ≡ ±3 mod 8)；
    在-1处采用 (a|-1) = -1 当且仅当 a < 0。

    Args:
        a: 整数
        n: 非零整数

    Returns:
        int: -1, 0 或 1
    """
    if n == 0:
        raise ValueError("Kronecker符号要求n ≠ 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def is_perfect_square(n: int) -> bool:
    """判断n是否为完全平方数（负数返回False）"""
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def squarefree_part(n: int) -> int:
    """带符号的无平方部分：n = squarefree_part(n) · m²"""
    if n == 0:
        raise ValueError("0没有无平方部分")
    sign = -1 if n < 0 else 1
    core = 1
    for p, e in factorize(n):
        if e % 2:
            core *= p
    return sign * core


def is_squarefree(n: int) -> bool:
    """n是否无平方因子（0不算）"""
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n))


def is_fundamental_discriminant(d: int) -> bool:
    """
    判断d是否为基本判别式

    1 视为平凡的基本判别式；其余须满足 d ≡ 1 mod 4 且无平方，
    或 d = 4m 且 m ≡ 2, 3 mod 4 无平方。
    """
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def discriminant_of_squarefree(d: int) -> int:
    """无平方整数d对应的二次域Q(√d)的基本判别式"""
    if not is_squarefree(d):
        raise ValueError(f"{d} 不是无平方整数")
    return d if d % 4 == 1 else 4 * d


def prime_discriminants(disc: int) -> List[int]:
    """
    把基本判别式分解为素判别式的乘积

    素判别式为 -4, 8, -8 以及 (-1)^((q-1)/2)·q (q为奇素数)。

    Args:
        disc: 基本判别式

    Returns:
        List[int]: 素判别式列表，偶数部分（若有）在最前
    """
    if not is_fundamental_discriminant(disc):
        raise ValueError(f"{disc} 不是基本判别式")
    if disc == 1:
        return []
    odd = []
    odd_product = 1
    for q, _ in factorize(disc):
        if q == 2:
            continue
        q_star = q if q % 4 == 1 else -q
        odd.append(q_star)
        odd_product *= q_star
    even = disc // odd_product
    if even not in (1, -4, 8, -8):
        raise RuntimeError(f"判别式 {disc} 的偶数部分异常: {even}")
    return ([even] if even != 1 else []) + odd
