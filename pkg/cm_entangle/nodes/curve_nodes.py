from typing import Dict, Tuple

from ..models.formal_group import (
    DEFAULT_PRECISION,
    SERIES_HEIGHT_PRIME_LIMIT,
    reduced_height,
    torsion_degree_lower_bound,
)
from ..models.weierstrass import Curve, conductor, invariants, quadratic_twist

CURVE_INPUT = ("STRING", {"default": "[1,-1,0,-2,-1]"})


class CurveInvariants:
    """
    曲线不变量节点：c4、c6、判别式与j
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "curve": CURVE_INPUT,
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("invariants",)
    FUNCTION = "compute"
    CATEGORY = "CM_ENTANGLE"

    def compute(self, curve: str) -> Tuple[Dict]:
        c = Curve.from_text(curve)
        c4, c6, disc, j = invariants(c)
        return ({
            "curve": list(c.ainvs),
            "c4": c4,
            "c6": c6,
            "disc": disc,
            "j": str(j),
        },)

    @staticmethod
    def format_text(payload: Dict) -> str:
        return "\n".join([
            f"curve: {payload['curve']}",
            f"c4 = {payload['c4']}",
            f"c6 = {payload['c6']}",
            f"Δ = {payload['disc']}",
            f"j = {payload['j']}",
        ])


class CurveConductor:
    """
    导子节点：Tate算法给出的导子、极小模型与每个坏素数的Kodaira符号
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "curve": CURVE_INPUT,
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("conductor",)
    FUNCTION = "compute"
    CATEGORY = "CM_ENTANGLE"

    def compute(self, curve: str) -> Tuple[Dict]:
        return (conductor(Curve.from_text(curve)).to_dict(),)

    @staticmethod
    def format_text(payload: Dict) -> str:
        lines = [str(payload["conductor"]), f"minimal model: {payload['minimal_model']}"]
        for ld in payload["local_data"]:
            lines.append(
                f"  p = {ld['prime']}: {ld['kodaira']}, f_p = {ld['conductor_exponent']}, "
                f"v_p(Δ) = {ld['disc_valuation']}"
            )
        return "\n".join(lines)


class QuadraticTwist:
    """
    二次扭节点
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "curve": CURVE_INPUT,
                "d": ("INT", {"default": 5}),
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("twist",)
    FUNCTION = "twist"
    CATEGORY = "CM_ENTANGLE"

    def twist(self, curve: str, d: int) -> Tuple[Dict]:
        """
        计算 E^(d) 的极小模型

        Args:
            curve: "[a1,a2,a3,a4,a6]"
            d: 非零无平方整数

        Returns:
            Tuple[Dict]: 扭曲线、导子与j
        """
        c = Curve.from_text(curve)
        twisted = quadratic_twist(c, d)
        return ({
            "curve": list(c.ainvs),
            "d": d,
            "twist": list(twisted.ainvs),
            "conductor": conductor(twisted).conductor,
            "j": str(twisted.j),
        },)

    @staticmethod
    def format_text(payload: Dict) -> str:
        return (f"{payload['curve']}^({payload['d']}) = {payload['twist']}\n"
                f"conductor = {payload['conductor']}, j = {payload['j']}")


class FormalGroupHeight:
    """
    约化形式群高度节点
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "curve": CURVE_INPUT,
                "p": ("INT", {"default": 3, "min": 2}),
            },
            "optional": {
                "precision": ("INT", {"default": DEFAULT_PRECISION, "min": 2}),
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("height",)
    FUNCTION = "compute"
    CATEGORY = "CM_ENTANGLE"

    def compute(self, curve: str, p: int, precision: int = DEFAULT_PRECISION) -> Tuple[Dict]:
        """
        计算好素数p处的高度

        级数检验要求精度大于p²，精度不足时自动提高到 p² + 2。

        Args:
            curve: "[a1,a2,a3,a4,a6]"
            p: 好约化素数
            precision: 级数精度

        Returns:
            Tuple[Dict]: 高度、见证次数、所用方法与实际精度
        """
        c = Curve.from_text(curve)
        if p <= SERIES_HEIGHT_PRIME_LIMIT:
            precision = max(precision, p * p + 2)
        result = reduced_height(c, p, precision)
        payload = result.to_dict()
        payload["precision"] = precision
        payload["supersingular"] = result.h == 2
        payload["torsion_degree_lower_bound"] = torsion_degree_lower_bound(p, result.h, 1)
        return (payload,)

    @staticmethod
    def format_text(payload: Dict) -> str:
        kind = "supersingular" if payload["supersingular"] else "ordinary"
        return (f"p = {payload['p']}: height {payload['h']} ({kind}), "
                f"leading term t^{payload['witness']}, method = {payload['method']}")
