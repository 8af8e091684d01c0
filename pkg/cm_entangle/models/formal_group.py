"""
Weierstrass模型的形式群（有限精度）

w(z) = z³ + a1·z·w + a2·z²·w + a3·w² + a4·z·w² + a6·w³ 通过不动点迭代求出，
群律按 z3 = -z1 - z2 - (...)/(...) 的经典公式构造，最后用形式逆 i(z) 得到 F(z1, z2)。
所有计算都在任意变量个数的截断级数环中进行，因此同一段代码既能给出二元的F，
也能直接在一元级数上计算 [m](t)，不必先展开高精度的二元群律。
"""

from fractions import Fraction
from typing import NamedTuple, Optional

from sympy import isprime

from .weierstrass import Curve, minimal_model, trace_of_frobenius
from ..utils.series import TruncatedSeries

DEFAULT_PRECISION = 12

# 高度的级数检验只对 p <= 7 运行，更大的素数用迹判别
SERIES_HEIGHT_PRIME_LIMIT = 7


class HeightResult(NamedTuple):
    """约化形式群的高度"""
    p: int
    h: int
    witness: int
    method: str

    def to_dict(self):
        return {"p": self.p, "h": self.h, "witness": self.witness, "method": self.method}


class FormalGroupLaw:
    """
    曲线的形式群律

    Args:
        curve: 整数Weierstrass模型
        precision: 总次数截断
        modulus: 给出时在Z/mZ上计算（用于模p约化）
    """

    def __init__(self, curve: Curve, precision: int = DEFAULT_PRECISION, modulus: Optional[int] = None):
        if precision < 2:
            raise ValueError(f"形式群精度至少为2: {precision}")
        self.curve = curve
        self.precision = precision
        self.modulus = modulus
        self._w = self._w_series(precision + 1)
        self._inverse = self._inverse_series()
        self._law = None

    def _w_series(self, prec: int) -> TruncatedSeries:
        c = self.curve
        z = TruncatedSeries.variable(0, 1, prec, self.modulus)
        z2 = z * z
        w = TruncatedSeries.zero(1, prec, self.modulus)
        for _ in range(prec):
            w = (z2 * z + z * w * c.a1 + z2 * w * c.a2 + w * w * c.a3
                 + z * w * w * c.a4 + w * w * w * c.a6)
        return w

    def _inverse_series(self) -> TruncatedSeries:
        c = self.curve
        z = TruncatedSeries.variable(0, 1, self.precision, self.modulus)
        w = self._w.truncate(self.precision)
        return z * (z * c.a1 + w * c.a3 - 1).inverse()

    @property
    def w(self) -> TruncatedSeries:
        return self._w

    @property
    def inverse_series(self) -> TruncatedSeries:
        """形式逆 i(z) = z / (a1·z + a3·w(z) - 1)"""
        return self._inverse

    @property
    def F(self) -> TruncatedSeries:
        """二元群律 F(z1, z2)"""
        if self._law is None:
            z1 = TruncatedSeries.variable(0, 2, self.precision, self.modulus)
            z2 = TruncatedSeries.variable(1, 2, self.precision, self.modulus)
            self._law = self.add(z1, z2)
        return self._law

    def add(self, u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
        """
        形式和 F(u, v)，u、v是同一个环中常数项为0的级数

        Args:
            u: 级数
            v: 级数

        Returns:
            TruncatedSeries: F(u, v)，精度不超过群律精度
        """
        if u.constant_term or v.constant_term:
            raise ValueError("形式群只能作用在常数项为0的级数上")
        prec = min(u.prec, v.prec, self.precision)
        u = u.truncate(prec)
        v = v.truncate(prec)
        c = self.curve
        one = TruncatedSeries.constant(1, u.nvars, prec, u.modulus)

        # λ = Σ_{n≥3} A_{n-3}·h_{n-1}(u, v)，h_k 为完全齐次对称多项式
        lam = TruncatedSeries.zero(u.nvars, prec, u.modulus)
        h = one
        u_power = one
        for n in range(1, prec + 1):
            u_power = u_power * u
            h = h * v + u_power
            coeff = self._w.coefficient(n + 1)
            if coeff:
                lam = lam + h * coeff
        nu = self._w.compose(u).truncate(prec) - lam * u

        numerator = lam * c.a1 + lam * lam * c.a3 + nu * c.a2 + lam * nu * (2 * c.a4) + lam * lam * nu * (3 * c.a6)
        denominator = one + lam * c.a2 + lam * lam * c.a4 + lam * lam * lam * c.a6
        z3 = -u - v - numerator * denominator.inverse()
        return self._inverse.compose(z3)

    def negate(self, u: TruncatedSeries) -> TruncatedSeries:
        return self._inverse.compose(u)


def group_law(c: Curve, prec: int = DEFAULT_PRECISION) -> FormalGroupLaw:
    """
    构造形式群律并展开F到总次数 < prec

    Args:
        c: 整数模型
        prec: 总次数截断，至少为2

    Returns:
        FormalGroupLaw: 已计算F的形式群律
    """
    fg = FormalGroupLaw(c, prec)
    _ = fg.F
    return fg


def multiplication_by_m(fg: FormalGroupLaw, m: int) -> TruncatedSeries:
    """[m](t)，用倍加法在一元级数上计算"""
    t = TruncatedSeries.variable(0, 1, fg.precision, fg.modulus)
    if m == 0:
        return TruncatedSeries.zero(1, fg.precision, fg.modulus)
    n = abs(m)
    result = None
    base = t
    while n:
        if n & 1:
            result = base if result is None else fg.add(result, base)
        n >>= 1
        if n:
            base = fg.add(base, base)
    return fg.negate(result) if m < 0 else result


def reduced_height(c: Curve, p: int, prec: int) -> HeightResult:
    """
    约化形式群在好素数p处的高度

    p <= SERIES_HEIGHT_PRIME_LIMIT 时在F_p上展开[p](t)：系数只出现在p²的倍数次时高度为2，
    否则为1，并与a_p mod p交叉检验；更大的p直接用超奇异判别 a_p ≡ 0 mod p。

    Args:
        c: 曲线
        p: 好约化素数
        prec: 级数精度，必须大于p²

    Returns:
        HeightResult: 高度、见证次数与所用方法
    """
    if p < 2 or not isprime(p):
        raise ValueError(f"p = {p} 不是素数")
    model = minimal_model(c)
    if model.disc % p == 0:
        raise ValueError(f"曲线在 p = {p} 处坏约化")
    trace = trace_of_frobenius(model, p)
    supersingular = trace % p == 0
    if p > SERIES_HEIGHT_PRIME_LIMIT:
        h = 2 if supersingular else 1
        return HeightResult(p, h, p ** h, "trace")
    if prec <= p * p:
        raise ValueError(f"精度不足: 需要 prec > p² = {p * p}，实际为 {prec}")

    fg = FormalGroupLaw(model, prec, modulus=p)
    series = multiplication_by_m(fg, p)
    exponents = [k for k, coeff in enumerate(series.coefficient_list()) if coeff]
    if not exponents:
        raise RuntimeError(f"[{p}] mod {p} 在精度 {prec} 内为0，高度超过2")
    if any(k % p for k in exponents):
        raise RuntimeError(f"[{p}] mod {p} 含有次数不被 {p} 整除的项")
    h = 2 if all(k % (p * p) == 0 for k in exponents) else 1
    witness = exponents[0]
    if witness != p ** h:
        raise RuntimeError(f"高度 {h} 与首项次数 {witness} 不一致")
    if supersingular != (h == 2):
        raise RuntimeError(f"高度 {h} 与 a_{p} = {trace} 的超奇异判别矛盾")
    return HeightResult(p, h, witness, "series")


def torsion_degree_lower_bound(p: int, h: int, n: int) -> int:
    """p^{h(n-1)}·(p^h - 1)：形式群中p^n挠点的个数下界"""
    if h not in (1, 2):
        raise ValueError(f"椭圆曲线形式群的高度只能是1或2: {h}")
    if n < 1:
        raise ValueError(f"n必须为正: {n}")
    return p ** (h * (n - 1)) * (p ** h - 1)


def torsion_valuation_bound(vp: int, p: int, h: int, n: int) -> Fraction:
    """
    挠点坐标的赋值上界 v(x) <= v(p) / (p^{h(n-1)}·(p^h - 1))

    Args:
        vp: v(p)，至少为1
        p: 素数
        h: 约化形式群的高度
        n: 挠点阶的指数

    Returns:
        Fraction: 精确的有理上界
    """
    if vp < 1:
        raise ValueError(f"v(p) 必须为正: {vp}")
    return Fraction(vp, torsion_degree_lower_bound(p, h, n))
