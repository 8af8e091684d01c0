"""
除法域纠缠分类器

对类数为1、Δ_O < -4 的CM曲线给出坏素数集合S、每个素数处的Galois群描述、
扭规则T1-T4，以及各素数幂除法域在K上是否线性无关的判定。
"""

from typing import Dict, NamedTuple, Optional, Tuple

from sympy import isprime

from . import GaloisImageEngine
from ..models.cm_registry import UNSUPPORTED_ORDER_DISCS, CMCurveRegistry, get_registry
from ..models.quad_orders import (
    Order,
    class_number_by_forms,
    residue_unit_count,
    special_prime,
)
from ..models.weierstrass import Curve, conductor, minimal_model, twist_factor
from ..utils.arith import (
    discriminant_of_squarefree,
    factorize,
    is_fundamental_discriminant,
    prime_discriminants,
    prime_divisors,
    valuation,
)
from ..utils.logger import Logger

logger = Logger("Entangle")

MAXIMAL_UNCONDITIONALLY = "maximal_unconditionally"
MAXIMAL_IFF_BASE_MAXIMAL = "maximal_iff_base_maximal"


class TwistCase(NamedTuple):
    """扭规则T1-T4之一"""
    tag: str
    conclusion: str
    threshold: Optional[int] = None

    def resolve(self, base_maximal: bool) -> bool:
        """给定基曲线是否有极大像，判断扭曲线是否有极大像"""
        if self.conclusion == MAXIMAL_UNCONDITIONALLY:
            return True
        return base_maximal

    def to_dict(self) -> Dict:
        return {"tag": self.tag, "conclusion": self.conclusion, "threshold": self.threshold}


class PrimeDescriptor(NamedTuple):
    """某个素数q处除法域 K(E[q^m]) 的描述"""
    prime: int
    level: int
    group_order: int
    maximal: bool
    minimal_field: bool
    entangled_with: Tuple[int, ...]

    def to_dict(self) -> Dict:
        return {
            "prime": self.prime,
            "level": self.level,
            "group_order": self.group_order,
            "maximal": self.maximal,
            "minimal_field": self.minimal_field,
            "entangled_with": list(self.entangled_with),
        }


class EntanglementReport(NamedTuple):
    """分类器的完整输出"""
    curve: Curve
    conductor: int
    order: Order
    n_of_order: int
    special_prime: int
    twist_minimal: bool
    base_curve: Curve
    delta_r: int
    bad_primes: Tuple[int, ...]
    conductor_primes: Tuple[int, ...]
    per_prime: Dict[int, PrimeDescriptor]
    twist_cases: Tuple[TwistCase, ...]
    entanglement: Optional[Dict]
    disjoint_over_K: bool

    def to_dict(self) -> Dict:
        return {
            "curve": list(self.curve.ainvs),
            "conductor": self.conductor,
            "order": self.order.to_dict(),
            "n_of_order": self.n_of_order,
            "special_prime": self.special_prime,
            "twist_minimal": self.twist_minimal,
            "base_curve": list(self.base_curve.ainvs),
            "delta_r": self.delta_r,
            "bad_primes": list(self.bad_primes),
            "conductor_primes": list(self.conductor_primes),
            "per_prime": {str(q): d.to_dict() for q, d in sorted(self.per_prime.items())},
            "twist_cases": [case.to_dict() for case in self.twist_cases],
            "entanglement": self.entanglement,
            "disjoint_over_K": self.disjoint_over_K,
        }


def n_of_order(order: Order) -> int:
    """n(O)：Z[2i] 与 Z[√-2] 为4，其余为2"""
    if order.disc >= -4:
        raise ValueError(f"不支持 Δ_O = {order.disc} 的序（需要 Δ_O < -4）")
    if class_number_by_forms(order).h != 1:
        raise ValueError(f"序 Δ_O = {order.disc} 的类数不为1")
    return 4 if order.disc in (-16, -8) else 2


def minimality_threshold(order: Order) -> int:
    """最小性描述成立的最低层级 m >= max(1, n(O) - 1)"""
    return max(1, n_of_order(order) - 1)


def fundamental_discriminant_split(disc: int) -> Tuple[int, int]:
    """
    把基本判别式写成 Δ = Δ_2·Δ'，Δ_2 ∈ {1, -4, 8, -8}，Δ' 为奇基本判别式

    Args:
        disc: 基本判别式

    Returns:
        Tuple[int, int]: (Δ_2, Δ')
    """
    if not is_fundamental_discriminant(disc):
        raise ValueError(f"{disc} 不是基本判别式")
    parts = prime_discriminants(disc)
    even = parts[0] if parts and parts[0] in (-4, 8, -8) else 1
    return even, disc // even


def twist_case(delta: int, p: int, f_e: int) -> TwistCase:
    """
    素判别式Δ的扭所属的规则

    Args:
        delta: 素判别式（±q、-4、±8）
        p: 特殊素数
        f_e: 基曲线的导子

    Returns:
        TwistCase: 规则标签与结论
    """
    if delta == 1 or not is_fundamental_discriminant(delta):
        raise ValueError(f"{delta} 不是非平凡基本判别式")
    if delta in (-4, 8, -8):
        if (p * f_e) % 2:
            return TwistCase("T3", MAXIMAL_UNCONDITIONALLY)
        if p == 2:
            return TwistCase("T4", MAXIMAL_IFF_BASE_MAXIMAL, abs(delta).bit_length() - 1)
        raise ValueError(f"Δ = {delta}: 2 整除导子 {f_e} 但 p = {p} ≠ 2，无适用规则")
    if len(prime_discriminants(delta)) != 1:
        raise ValueError(f"{delta} 不是素判别式")
    q = abs(delta)
    if q == p and p >= 3:
        return TwistCase("T2", MAXIMAL_IFF_BASE_MAXIMAL)
    if (p * f_e) % q:
        return TwistCase("T1", MAXIMAL_UNCONDITIONALLY)
    raise ValueError(f"Δ = {delta}: {q} 整除 p·f_E = {p * f_e}，无适用规则")


def bad_prime_set(c: Curve, order: Order) -> Tuple[int, ...]:
    """整除 f_O·Δ_K·f_E 的素数"""
    f_e = conductor(c).conductor
    return tuple(prime_divisors(order.conductor * order.fund_disc * f_e))


def galois_order(order: Order, q: int, m: int, minimal: bool) -> int:
    """
    Gal(K(E[q^m])/K) 的阶

    Args:
        order: 序
        q: 素数
        m: 正整数层级
        minimal: 是否为最小像（指数为2，不含-1）

    Returns:
        int: |(O/q^m O)^×|，最小时除以2
    """
    if not isprime(q):
        raise ValueError(f"{q} 不是素数")
    if m < 1:
        raise ValueError(f"层级必须为正: {m}")
    count = residue_unit_count(order, q ** m)
    if not minimal:
        return count
    threshold = minimality_threshold(order)
    if m < threshold:
        raise ValueError(f"最小像只对 m >= {threshold} 成立，实际 m = {m}")
    if count % 2:
        raise RuntimeError(f"|(O/{q}^{m}O)^×| = {count} 不是偶数")
    return count // 2


def compositum_galois_order(order: Order, levels: Dict[int, int]) -> int:
    """
    S中各素数幂除法域合成域的Galois群阶 ∏|(O/q^{a_q}O)^×| / 2

    要求2出现时 a_2 >= 3，特殊素数p出现时 a_p >= max(1, n(O) - 1)。
    """
    if not levels:
        raise ValueError("至少需要一个素数")
    p = special_prime(order)
    threshold = minimality_threshold(order)
    total = 1
    for q, a in sorted(levels.items()):
        if q == 2 and a < 3:
            raise ValueError(f"2处的层级须 >= 3，实际为 {a}")
        if q == p and a < threshold:
            raise ValueError(f"{p}处的层级须 >= {threshold}，实际为 {a}")
        total *= residue_unit_count(order, q ** a)
    return total // 2


def adelic_index(order: Order) -> int:
    """Q上CM曲线的挠点Galois像在 Aut_O(E_tors) 中的指数 |O^×|"""
    return order.unit_order


def hecke_conductor_norm(c: Curve, order: Order) -> int:
    """
    Hecke特征标导子的范数 f_E / |Δ_K|

    Raises:
        ValueError: 商不是整数（非CM曲线或序不对）
    """
    f_e = conductor(c).conductor
    norm, rem = divmod(f_e, abs(order.fund_disc))
    if rem or norm < 1:
        raise ValueError(f"导子 {f_e} 不能被 |Δ_K| = {abs(order.fund_disc)} 整除，曲线不是该序的CM曲线")
    return norm


def hecke_conductor_exponents(c: Curve, order: Order) -> Dict[int, int]:
    """
    Hecke导子范数的素因子分解，并检查特殊素数处的指数界
    （p = 2 时 k <= 6，否则 k <= 2）
    """
    norm = hecke_conductor_norm(c, order)
    exponents = dict(factorize(norm)) if norm > 1 else {}
    p = special_prime(order)
    bound = 6 if p == 2 else 2
    if exponents.get(p, 0) > bound:
        raise RuntimeError(f"Hecke导子在 {p} 处的指数 {exponents[p]} 超过 {bound}")
    return exponents


def _applicable_twist_cases(delta_r: int, p: int, f_base: int) -> Tuple[TwistCase, ...]:
    cases = []
    for delta in prime_discriminants(delta_r):
        try:
            cases.append(twist_case(delta, p, f_base))
        except ValueError as e:
            # 例如 Z[√-3] 的基曲线导子含2，-4 与 ±8 的扭没有对应规则
            logger.debug(f"跳过扭因子 {delta}: {e}")
    return tuple(cases)


def _twist_base(registry: CMCurveRegistry, order: Order, model: Curve, p: int) -> Tuple[Curve, int]:
    """找出唯一的 A_{r0} 与与p互素的基本判别式Δ_r，使得 E ≅_Q A_{r0}^(Δ_r)"""
    candidates = []
    for base in registry.twist_minimal_curves(order):
        d = twist_factor(base, model)
        if d is None:
            continue
        delta = discriminant_of_squarefree(d)
        if delta % p:
            candidates.append((base, delta))
    if len(candidates) != 1:
        raise RuntimeError(f"扭基曲线不唯一或不存在: {candidates}")
    return candidates[0]


def classify(c: Curve, registry: Optional[CMCurveRegistry] = None) -> EntanglementReport:
    """
    对CM曲线进行纠缠分类

    流程：按j查找序；取极小模型；判断扭极小性；
    扭极小时各素数幂除法域线性无关，p处在 m >= n-1 时为最小像；
    否则找出 E = A_{r0}^(Δ_r)，S = {p} ∪ {Δ_r的素因子}，
    K(E[p^m]) = H_{p^m,O}(√Δ_r)，且与 K(E[Δ_r]) 的交为 K(√Δ_r)。

    Args:
        c: 整数模型
        registry: 注册表，默认使用内置注册表

    Returns:
        EntanglementReport: 分类结果
    """
    registry = registry or get_registry()
    model = minimal_model(c)
    order = registry.lookup_by_j(model.j)
    if order is None:
        raise ValueError(f"j = {model.j} 不在注册表中：曲线不是CM曲线，或其CM序的类数大于1")
    if order.disc in UNSUPPORTED_ORDER_DISCS:
        raise ValueError(f"j = {model.j} 的曲线有四次或六次扭，不在分类范围内")

    n = n_of_order(order)
    p = special_prime(order)
    threshold = minimality_threshold(order)
    f_e = conductor(model).conductor
    conductor_primes = bad_prime_set(model, order)
    minimal, match = registry.is_twist_minimal(model)
    per_prime: Dict[int, PrimeDescriptor] = {}

    if minimal:
        base, delta_r = match, 1
        bad_primes: Tuple[int, ...] = (p,)
        per_prime[p] = PrimeDescriptor(p, threshold, galois_order(order, p, threshold, True), False, True, ())
        twist_cases: Tuple[TwistCase, ...] = ()
        entanglement = None
    else:
        base, delta_r = _twist_base(registry, order, model, p)
        bad_primes = tuple(prime_divisors(p * delta_r))
        f_base = conductor(base).conductor
        twist_cases = _applicable_twist_cases(delta_r, p, f_base)
        levels = {q: 3 if q == 2 else threshold if q == p else 1 for q in bad_primes}
        for q in bad_primes:
            others = tuple(x for x in bad_primes if x != q)
            per_prime[q] = PrimeDescriptor(q, levels[q], galois_order(order, q, levels[q], False), True, False, others)
        entanglement = {
            "p_level_field": f"K(E[{p}^m]) = H_{{{p}^m,O}}(√{delta_r})",
            "intersection": f"K(E[{p}^m]) ∩ K(E[{abs(delta_r)}]) = K(√{delta_r})",
            "threshold_m": threshold,
            "compositum_levels": {str(q): a for q, a in sorted(levels.items())},
            "compositum_order": compositum_galois_order(order, levels),
        }

    for q in conductor_primes:
        if q not in per_prime:
            per_prime[q] = PrimeDescriptor(q, 1, galois_order(order, q, 1, False), True, False, ())

    logger.debug(f"{list(model.ainvs)}: Δ_O = {order.disc}, 扭极小 = {minimal}, Δ_r = {delta_r}")
    return EntanglementReport(
        curve=model,
        conductor=f_e,
        order=order,
        n_of_order=n,
        special_prime=p,
        twist_minimal=minimal,
        base_curve=base,
        delta_r=delta_r,
        bad_primes=bad_primes,
        conductor_primes=conductor_primes,
        per_prime=per_prime,
        twist_cases=twist_cases,
        entanglement=entanglement,
        disjoint_over_K=minimal,
    )


class TheoryEngine(GaloisImageEngine):
    """
    由分类结果预测 Gal(K(E[N])/K) 的阶
    """

    def __init__(self, registry: Optional[CMCurveRegistry] = None):
        self.registry = registry or get_registry()
        self.logger = Logger("TheoryEngine")

    def predict_index(self, curve: Curve, modulus: int) -> Optional[int]:
        """
        像在 (O/NO)^× 中的指数：1、2，或分类无法判定时为None
        """
        if modulus < 1:
            raise ValueError(f"模数必须为正: {modulus}")
        report = classify(curve, self.registry)
        p = report.special_prime
        threshold = minimality_threshold(report.order)
        if report.twist_minimal:
            m = valuation(modulus, p)
            if m == 0:
                return 1
            return 2 if m >= threshold else None
        covered = [q for q in report.bad_primes if modulus % q == 0]
        if 2 in covered and valuation(modulus, 2) < 3:
            return None
        if p in covered and valuation(modulus, p) < threshold:
            return None
        if len(covered) <= 1:
            return 1
        if len(covered) == len(report.bad_primes):
            return 2
        return None

    def image_order(self, curve: Curve, modulus: int) -> Optional[int]:
        index = self.predict_index(curve, modulus)
        if index is None:
            return None
        order = self.registry.lookup_by_j(minimal_model(curve).j)
        return residue_unit_count(order, modulus) // index

    def describe(self, curve: Curve, modulus: int) -> Dict:
        index = self.predict_index(curve, modulus)
        return {
            "modulus": modulus,
            "index": index,
            "order": self.image_order(curve, modulus),
            "contains_minus_one": None if index is None else index == 1,
        }
