import os
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from .quad_orders import CLASS_NUMBER_ONE_DISCRIMINANTS, Order
from .weierstrass import Curve, conductor, minimal_model, twist_factor
from ..utils.arith import squarefree_part
from ..utils.logger import Logger

# 内置注册表数据
REGISTRY_DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "data")
DEFAULT_REGISTRY_PATH = os.path.join(REGISTRY_DATA_DIR, "cm_curves.txt")

# j ∈ {0, 1728} 的序：有四次/六次扭，不做分类
UNSUPPORTED_ORDER_DISCS = (-3, -4)


class RegistryEntry(NamedTuple):
    """某个类数为1的序在注册表中的全部扭极小曲线"""
    order_disc: int
    j: Fraction
    curves: Tuple[Curve, ...]
    conductors: Tuple[int, ...]
    rank_tier: str

    @property
    def conductor(self) -> int:
        return min(self.conductors)

    @property
    def supported(self) -> bool:
        return self.order_disc not in UNSUPPORTED_ORDER_DISCS


class CMCurveRegistry:
    """
    CM曲线注册表管理器，负责读取数据文件、校验并回答CM判定与扭极小性查询
    """

    # 十三个类数为1的序
    AVAILABLE_ORDERS = {
        -3: {'name': 'Z[ζ₃]', 'description': '艾森斯坦整数，j = 0（有六次扭，不做分类）'},
        -4: {'name': 'Z[i]', 'description': '高斯整数，j = 1728（有四次扭，不做分类）'},
        -7: {'name': 'Z[(1+√-7)/2]', 'description': 'Q(√-7)的极大序'},
        -8: {'name': 'Z[√-2]', 'description': 'Q(√-2)的极大序，n(O) = 4'},
        -11: {'name': 'Z[(1+√-11)/2]', 'description': 'Q(√-11)的极大序'},
        -12: {'name': 'Z[√-3]', 'description': 'Q(√-3)中导子为2的序'},
        -16: {'name': 'Z[2i]', 'description': 'Q(i)中导子为2的序，n(O) = 4'},
        -19: {'name': 'Z[(1+√-19)/2]', 'description': 'Q(√-19)的极大序'},
        -27: {'name': 'Z[3ζ₃]', 'description': 'Q(√-3)中导子为3的序'},
        -28: {'name': 'Z[√-7]', 'description': 'Q(√-7)中导子为2的序'},
        -43: {'name': 'Z[(1+√-43)/2]', 'description': 'Q(√-43)的极大序'},
        -67: {'name': 'Z[(1+√-67)/2]', 'description': 'Q(√-67)的极大序'},
        -163: {'name': 'Z[(1+√-163)/2]', 'description': 'Q(√-163)的极大序'},
    }

    def __init__(self, data_path: Optional[str] = None, verify: bool = True):
        """
        初始化注册表

        Args:
            data_path: 数据文件路径，默认为内置文件
            verify: 是否在读取后立即校验全部曲线，失败时抛出RuntimeError
        """
        self.data_path = data_path or DEFAULT_REGISTRY_PATH
        self.logger = Logger("CMRegistry")
        self._records = self._load(self.data_path)
        self._entries = self._group(self._records)
        self.logger.debug(f"已读取 {len(self._records)} 条曲线: {self.data_path}")
        if verify:
            failures = [r for r in self.self_check() if not r["passed"]]
            if failures:
                raise RuntimeError(f"注册表校验失败: {failures}")

    @staticmethod
    def _load(path: str) -> List[Dict]:
        if not os.path.exists(path):
            raise ValueError(f"注册表文件不存在: {path}")
        records = []
        with open(path, "r", encoding="utf-8") as f:
            for lineno, raw in enumerate(f, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                fields = line.split(None, 4)
                if len(fields) != 5:
                    raise ValueError(f"{path}:{lineno} 格式错误，应为 'disc_K f_O j |f_E| [a1,a2,a3,a4,a6]'")
                try:
                    disc_k, f_o, j, cond = (int(x) for x in fields[:4])
                except ValueError as e:
                    raise ValueError(f"{path}:{lineno} 数值字段无法解析: {e}")
                records.append({
                    "disc_k": disc_k,
                    "order_disc": f_o * f_o * disc_k,
                    "j": Fraction(j),
                    "conductor": cond,
                    "curve": Curve.from_text(fields[4]),
                })
        return records

    @staticmethod
    def _group(records: List[Dict]) -> Dict[int, RegistryEntry]:
        grouped: Dict[int, List[Dict]] = {}
        for record in records:
            grouped.setdefault(record["order_disc"], []).append(record)
        entries = {}
        for disc, group in grouped.items():
            js = {r["j"] for r in group}
            if len(js) != 1:
                raise ValueError(f"序 {disc} 的曲线j不变量不一致: {sorted(js)}")
            entries[disc] = RegistryEntry(
                order_disc=disc,
                j=js.pop(),
                curves=tuple(r["curve"] for r in group),
                conductors=tuple(r["conductor"] for r in group),
                rank_tier="twist_minimal",
            )
        return entries

    def self_check(self) -> List[Dict]:
        """
        重新计算每条曲线的j、导子与极小性，并检查每个序的曲线条数

        Returns:
            List[Dict]: 每条曲线的检查记录
        """
        results = []
        for record in self._records:
            curve = record["curve"]
            data = conductor(curve)
            checks = {
                "order_ok": record["order_disc"] in CLASS_NUMBER_ONE_DISCRIMINANTS,
                "j_ok": curve.j == record["j"],
                "conductor_ok": data.conductor == record["conductor"],
                "minimal_ok": minimal_model(curve) == curve,
                "count_ok": len(self._entries[record["order_disc"]].curves) == self.expected_curve_count(record["order_disc"]),
            }
            results.append({
                "order_disc": record["order_disc"],
                "curve": list(curve.ainvs),
                "conductor": data.conductor,
                **checks,
                "passed": all(checks.values()),
            })
        passed = sum(1 for r in results if r["passed"])
        self.logger.debug(f"注册表自检: {passed}/{len(results)} 通过")
        return results

    @staticmethod
    def expected_curve_count(order_disc: int) -> int:
        return 4 if order_disc in (-8, -16) else 2

    def get_available_orders(self) -> Dict:
        """获取注册表中的序列表"""
        return {disc: self.AVAILABLE_ORDERS[disc] for disc in sorted(self._entries, reverse=True)}

    def is_order_available(self, order_disc: int) -> bool:
        return order_disc in self._entries

    def orders(self) -> List[Order]:
        return [Order(disc) for disc in sorted(self._entries, reverse=True)]

    def entry(self, order) -> RegistryEntry:
        disc = order.disc if isinstance(order, Order) else int(order)
        if disc not in self._entries:
            raise ValueError(f"序 {disc} 不在注册表中")
        return self._entries[disc]

    def entries(self) -> List[RegistryEntry]:
        return [self._entries[disc] for disc in sorted(self._entries, reverse=True)]

    def curve_count(self) -> int:
        """注册表中的曲线总数"""
        return len(self._records)

    def applicable_curve_count(self) -> int:
        """Δ_O < -4 的曲线数（不含 j = 0, 1728）"""
        return sum(len(e.curves) for e in self._entries.values() if e.supported)

    def all_curves(self, supported_only: bool = False) -> List[Tuple[Order, Curve]]:
        return [
            (Order(e.order_disc), c)
            for e in self.entries()
            if e.supported or not supported_only
            for c in e.curves
        ]

    def lookup_by_j(self, j) -> Optional[Order]:
        """
        按j不变量查找类数为1的序

        Args:
            j: 有理数j不变量

        Returns:
            Optional[Order]: 对应的序，不存在时为None
        """
        j = Fraction(j)
        for entry in self._entries.values():
            if entry.j == j:
                return Order(entry.order_disc)
        return None

    def twist_minimal_curves(self, order: Order) -> List[Curve]:
        """序对应的扭极小曲线 A_1, ..., A_n"""
        return list(self.entry(order).curves)

    def is_twist_minimal(self, c: Curve) -> Tuple[bool, Optional[Curve]]:
        """
        判断曲线是否在K上同构于注册表中的某条曲线

        Args:
            c: 曲线，其j须对应Δ_O < -4的注册表序

        Returns:
            Tuple[bool, Optional[Curve]]: 是否扭极小，以及匹配到的注册表曲线
        """
        order = self.lookup_by_j(c.j)
        if order is None:
            raise ValueError(f"j = {c.j} 不在注册表中（非CM曲线或类数大于1）")
        if order.disc in UNSUPPORTED_ORDER_DISCS:
            raise ValueError(f"j = {c.j} 的曲线有四次或六次扭，不支持扭极小判定")
        model = minimal_model(c)
        curves = self.twist_minimal_curves(order)
        if model in curves:
            return True, model
        k_class = squarefree_part(order.fund_disc)
        for base in curves:
            d = twist_factor(base, model)
            if d in (1, k_class):
                return True, base
        return False, None


@lru_cache(maxsize=8)
def get_registry(data_path: Optional[str] = None) -> CMCurveRegistry:
    """按路径缓存的注册表实例（读取后不可变）"""
    return CMCurveRegistry(data_path)
