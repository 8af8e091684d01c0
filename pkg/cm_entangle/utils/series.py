"""
截断多元幂级数

稀疏存储：指数元组 -> 精确系数（int、Fraction，或模m剩余）。
截断按总次数进行：任何总次数 >= prec 的项都不会被保存。
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Coefficient = Union[int, Fraction]
Exponents = Tuple[int, ...]


class TruncatedSeries:
    """
    截断幂级数，变量个数任意（群律使用1或2个变量，结合律检验使用3个）

    Args:
        coeffs: 指数元组到系数的映射
        nvars: 变量个数
        prec: 总次数截断
        modulus: 系数环为Z/mZ时给出m，否则为None（整数或有理数）
    """

    __slots__ = ("nvars", "prec", "modulus", "_coeffs")

    def __init__(self, coeffs: Dict[Exponents, Coefficient], nvars: int, prec: int,
                 modulus: Optional[int] = None):
        if nvars < 1:
            raise ValueError("变量个数至少为1")
        if prec < 0:
            raise ValueError("精度不能为负")
        if modulus is not None and modulus < 2:
            raise ValueError(f"模数必须 >= 2: {modulus}")
        self.nvars = nvars
        self.prec = prec
        self.modulus = modulus
        cleaned: Dict[Exponents, Coefficient] = {}
        for exps, c in coeffs.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"指数元组 {exps} 与变量个数 {nvars} 不符")
            if sum(exps) >= prec:
                continue
            c = self._normalize(c)
            if c:
                cleaned[exps] = c
        self._coeffs = cleaned

    def _normalize(self, c: Coefficient) -> Coefficient:
        if self.modulus is None:
            return c
        if isinstance(c, Fraction):
            if c.denominator != 1:
                c = c.numerator * pow(c.denominator, -1, self.modulus)
            else:
                c = c.numerator
        return int(c) % self.modulus

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, prec: int, modulus: Optional[int] = None) -> "TruncatedSeries":
        return cls({}, nvars, prec, modulus)

    @classmethod
    def constant(cls, value: Coefficient, nvars: int, prec: int,
                 modulus: Optional[int] = None) -> "TruncatedSeries":
        return cls({(0,) * nvars: value}, nvars, prec, modulus)

    @classmethod
    def variable(cls, index: int, nvars: int, prec: int,
                 modulus: Optional[int] = None) -> "TruncatedSeries":
        """第index个坐标变量（从0开始）"""
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls({exps: 1}, nvars, prec, modulus)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Coefficient], prec: int,
                          modulus: Optional[int] = None) -> "TruncatedSeries":
        """由一元系数列表 [c0, c1, ...] 构造"""
        return cls({(k,): c for k, c in enumerate(coeffs)}, 1, prec, modulus)

    def _like(self, coeffs: Dict[Exponents, Coefficient], prec: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(coeffs, self.nvars, self.prec if prec is None else prec, self.modulus)

    # ------------------------------------------------------------------
    # 查询
    # ------------------------------------------------------------------
    def coefficient(self, exps: Union[int, Iterable[int]]) -> Coefficient:
        if isinstance(exps, int):
            exps = (exps,)
        return self._coeffs.get(tuple(exps), 0)

    def items(self) -> List[Tuple[Exponents, Coefficient]]:
        """按（总次数，指数）排序的非零项"""
        return sorted(self._coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def coefficient_list(self) -> List[Coefficient]:
        """一元级数的稠密系数列表，长度为prec"""
        if self.nvars != 1:
            raise ValueError("只有一元级数才有系数列表")
        return [self._coeffs.get((k,), 0) for k in range(self.prec)]

    @property
    def constant_term(self) -> Coefficient:
        return self._coeffs.get((0,) * self.nvars, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def valuation(self) -> Optional[int]:
        """最低非零项的总次数；零级数返回None"""
        if not self._coeffs:
            return None
        return min(sum(e) for e in self._coeffs)

    def truncate(self, prec: int) -> "TruncatedSeries":
        return self._like(self._coeffs, min(prec, self.prec))

    def reduce(self, modulus: int) -> "TruncatedSeries":
        """把系数约化到Z/mZ"""
        if self.modulus is not None and self.modulus % modulus != 0:
            raise ValueError(f"无法从模 {self.modulus} 约化到模 {modulus}")
        return TruncatedSeries(self._coeffs, self.nvars, self.prec, modulus)

    # ------------------------------------------------------------------
    # 环运算
    # ------------------------------------------------------------------
    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.nvars != self.nvars:
                raise ValueError(f"变量个数不一致: {self.nvars} 与 {other.nvars}")
            if other.modulus != self.modulus:
                raise ValueError(f"系数环不一致: 模 {self.modulus} 与模 {other.modulus}")
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other, self.nvars, self.prec, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return self._like(out, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({e: c * other for e, c in self._coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        if self.nvars == 1:
            return self._like(self._mul_univariate(other, prec), prec)
        right = [(e, sum(e), c) for e, c in other._coeffs.items()]
        out: Dict[Exponents, Coefficient] = {}
        for e1, c1 in self._coeffs.items():
            d1 = sum(e1)
            for e2, d2, c2 in right:
                if d1 + d2 >= prec:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if self.modulus is not None:
            out = {e: c % self.modulus for e, c in out.items()}
        return self._like(out, prec)

    __rmul__ = __mul__

    def _mul_univariate(self, other: "TruncatedSeries", prec: int) -> Dict[Exponents, Coefficient]:
        left = sorted((e[0], c) for e, c in self._coeffs.items())
        right = sorted((e[0], c) for e, c in other._coeffs.items())
        out = [0] * prec
        for i, ci in left:
            for j, cj in right:
                if i + j >= prec:
                    break
                out[i + j] += ci * cj
        if self.modulus is not None:
            out = [c % self.modulus for c in out]
        return {(k,): c for k, c in enumerate(out) if c}

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("只支持非负整数次幂")
        result = TruncatedSeries.constant(1, self.nvars, self.prec, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _invert_scalar(self, c: Coefficient) -> Coefficient:
        if self.modulus is not None:
            try:
                return pow(int(c), -1, self.modulus)
            except ValueError:
                raise ValueError(f"常数项 {c} 在模 {self.modulus} 下不可逆")
        if isinstance(c, int) and c in (1, -1):
            return c
        if c == 0:
            raise ValueError("常数项为0的级数不可逆")
        return Fraction(1) / Fraction(c)

    def inverse(self) -> "TruncatedSeries":
        """乘法逆元，要求常数项可逆"""
        c0 = self.constant_term
        inv_c0 = self._invert_scalar(c0)
        x = (self - c0) * (-inv_c0)
        result = TruncatedSeries.constant(1, self.nvars, self.prec, self.modulus)
        for _ in range(self.prec):
            result = x * result + 1
        return result * inv_c0

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """
        一元级数的复合 f(g)

        Args:
            inner: 常数项为0的级数，变量个数任意

        Returns:
            TruncatedSeries: 与inner同一个环中的 f(g)，精度取两者较小值
        """
        if self.nvars != 1:
            raise ValueError("外层级数必须是一元的")
        if inner.constant_term:
            raise ValueError("内层级数的常数项必须为0")
        if inner.modulus != self.modulus:
            raise ValueError(f"系数环不一致: 模 {self.modulus} 与模 {inner.modulus}")
        prec = min(self.prec, inner.prec)
        g = inner.truncate(prec)
        coeffs = self.coefficient_list()[:prec]
        result = TruncatedSeries.zero(g.nvars, prec, g.modulus)
        for c in reversed(coeffs):
            result = result * g + c
        return result

    def evaluate(self, inners: Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """
        多元代入 F(g_1, ..., g_k)，每个g_i常数项为0且属于同一个环
        """
        if len(inners) != self.nvars:
            raise ValueError(f"需要 {self.nvars} 个代入级数，实际为 {len(inners)}")
        first = inners[0]
        for g in inners:
            if g.constant_term:
                raise ValueError("代入级数的常数项必须为0")
            first._coerce(g)
        if first.modulus != self.modulus:
            raise ValueError(f"系数环不一致: 模 {self.modulus} 与模 {first.modulus}")
        prec = min([self.prec] + [g.prec for g in inners])
        gs = [g.truncate(prec) for g in inners]
        powers: List[Dict[int, TruncatedSeries]] = [
            {0: TruncatedSeries.constant(1, first.nvars, prec, first.modulus)} for _ in gs
        ]

        def power(i: int, k: int) -> TruncatedSeries:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * gs[i]
            return cache[k]

        result = TruncatedSeries.zero(first.nvars, prec, first.modulus)
        for exps, c in self.items():
            term = TruncatedSeries.constant(c, first.nvars, prec, first.modulus)
            for i, k in enumerate(exps):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    # ------------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.nvars != other.nvars or self.modulus != other.modulus:
            return False
        prec = min(self.prec, other.prec)
        return self.truncate(prec)._coeffs == other.truncate(prec)._coeffs

    __hash__ = None

    def __repr__(self) -> str:
        names = ["t"] if self.nvars == 1 else [f"z{i + 1}" for i in range(self.nvars)]
        terms = []
        for exps, c in self.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k
            )
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        body = " + ".join(terms) if terms else "0"
        ring = f" mod {self.modulus}" if self.modulus else ""
        return f"TruncatedSeries({body} + O(deg {self.prec}){ring})"


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """截断乘积，精度取两者较小值"""
    if not isinstance(g, TruncatedSeries) or not isinstance(f, TruncatedSeries):
        raise ValueError("series_mul 只接受两个 TruncatedSeries")
    return f * g


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """复合 f(g(t))，g的常数项必须为0"""
    return f.compose(g)
