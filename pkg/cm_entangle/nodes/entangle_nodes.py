from typing import Dict, Tuple

from ..engines.entangle_engine import TheoryEngine, adelic_index, classify, hecke_conductor_norm
from ..engines.frobenius_engine import DEFAULT_PRIME_BOUND, IMAGE_MODULUS_LIMIT, PRIME_BOUND_LIMIT, image_subgroup
from ..models.cm_registry import UNSUPPORTED_ORDER_DISCS, CMCurveRegistry, get_registry
from ..models.weierstrass import Curve, minimal_model
from ..utils.logger import Logger

REGISTRY_INPUT = ("STRING", {"default": ""})


def _load_registry(registry: str) -> CMCurveRegistry:
    return get_registry(registry or None)


class ClassifyEntanglement:
    """
    纠缠分类节点
    """

    def __init__(self):
        self.logger = Logger("ClassifyNode")

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "curve": ("STRING", {"default": "[1,-1,0,-2,-1]"}),
            },
            "optional": {
                "registry": REGISTRY_INPUT,
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("report",)
    FUNCTION = "classify"
    CATEGORY = "CM_ENTANGLE"

    def classify(self, curve: str, registry: str = "") -> Tuple[Dict]:
        """
        对CM曲线进行纠缠分类

        Args:
            curve: "[a1,a2,a3,a4,a6]"
            registry: 注册表文件路径，空字符串表示内置注册表

        Returns:
            Tuple[Dict]: 分类报告
        """
        report = classify(Curve.from_text(curve), _load_registry(registry))
        payload = report.to_dict()
        payload["hecke_conductor_norm"] = hecke_conductor_norm(report.curve, report.order)
        payload["adelic_index"] = adelic_index(report.order)
        self.logger.debug(f"分类完成: S = {list(report.bad_primes)}")
        return (payload,)

    @staticmethod
    def format_text(payload: Dict) -> str:
        order = payload["order"]
        lines = [
            f"curve: {payload['curve']} (conductor {payload['conductor']})",
            f"order: Δ_O = {order['disc']}, Δ_K = {order['fund_disc']}, f_O = {order['conductor']}, "
            f"n(O) = {payload['n_of_order']}, p = {payload['special_prime']}",
            f"twist minimal: {payload['twist_minimal']} (base {payload['base_curve']}, Δ_r = {payload['delta_r']})",
            f"S = {payload['bad_primes']}  (primes of f_O·Δ_K·f_E: {payload['conductor_primes']})",
        ]
        for q, d in payload["per_prime"].items():
            kind = "maximal" if d["maximal"] else "minimal" if d["minimal_field"] else "-"
            lines.append(f"  q = {q}: |Gal(K(E[{q}^{d['level']}])/K)| = {d['group_order']} ({kind})")
        for case in payload["twist_cases"]:
            lines.append(f"  twist rule {case['tag']}: {case['conclusion']}")
        if payload["entanglement"]:
            lines.append(f"  {payload['entanglement']['p_level_field']}")
            lines.append(f"  {payload['entanglement']['intersection']}")
        lines.append(f"linearly disjoint over K: {payload['disjoint_over_K']}")
        return "\n".join(lines)


class FrobeniusImage:
    """
    Frobenius像节点：测量 ρ_{E,N} 的像并与分类结论比较
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "curve": ("STRING", {"default": "[1,-1,0,-2,-1]"}),
                "n": ("INT", {"default": 7, "min": 1, "max": IMAGE_MODULUS_LIMIT}),
            },
            "optional": {
                "prime_bound": ("INT", {"default": DEFAULT_PRIME_BOUND, "min": 2, "max": PRIME_BOUND_LIMIT}),
                "registry": REGISTRY_INPUT,
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("image",)
    FUNCTION = "measure"
    CATEGORY = "CM_ENTANGLE"

    def measure(self, curve: str, n: int, prime_bound: int = DEFAULT_PRIME_BOUND, registry: str = "") -> Tuple[Dict]:
        reg = _load_registry(registry)
        c = Curve.from_text(curve)
        order = reg.lookup_by_j(minimal_model(c).j)
        if order is None:
            raise ValueError(f"j = {c.j} 不在注册表中")
        payload = image_subgroup(c, order, n, prime_bound).to_dict()
        payload["predicted_index"] = (
            TheoryEngine(reg).predict_index(c, n) if order.disc not in UNSUPPORTED_ORDER_DISCS else None
        )
        return (payload,)

    @staticmethod
    def format_text(payload: Dict) -> str:
        return "\n".join([
            f"N = {payload['modulus']}: |image| = {payload['size']} of {payload['full_order']} "
            f"(index {payload['index']})",
            f"contains -1: {payload['contains_minus_one']}",
            f"{payload['label']} after {payload['primes_used']} split primes (last q = {payload['last_prime']})",
            f"predicted index: {payload['predicted_index']}",
        ])


class VerifyRegistry:
    """
    注册表自检节点
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {},
            "optional": {
                "registry": REGISTRY_INPUT,
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("results",)
    FUNCTION = "verify"
    CATEGORY = "CM_ENTANGLE"

    def verify(self, registry: str = "") -> Tuple[Dict]:
        reg = CMCurveRegistry(registry or None, verify=False)
        results = reg.self_check()
        failures = [r for r in results if not r["passed"]]
        if failures:
            raise RuntimeError(f"{len(failures)} 条曲线未通过自检: {failures}")
        return ({
            "registry": reg.data_path,
            "curve_count": reg.curve_count(),
            "applicable_curve_count": reg.applicable_curve_count(),
            "results": results,
        },)

    @staticmethod
    def format_text(payload: Dict) -> str:
        lines = [
            f"{payload['curve_count']} curves ({payload['applicable_curve_count']} with Δ_O < -4): all passed",
        ]
        for r in payload["results"]:
            lines.append(f"  Δ_O = {r['order_disc']:>5}  {r['curve']}  conductor {r['conductor']}")
        return "\n".join(lines)
