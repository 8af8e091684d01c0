from typing import Dict, Tuple

from ..models.quad_orders import (
    class_number_by_forms,
    class_number_by_formula,
    order_from_discriminant,
    ray_class_degree,
    residue_unit_count,
    unit_image_order,
)


class OrderClassGroup:
    """
    类群节点：约化二次型枚举与类数公式
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "disc": ("INT", {"default": -7, "max": -3}),
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("class_group",)
    FUNCTION = "compute"
    CATEGORY = "CM_ENTANGLE"

    def compute(self, disc: int) -> Tuple[Dict]:
        order = order_from_discriminant(disc)
        data = class_number_by_forms(order)
        payload = order.to_dict()
        payload.update({
            "h": data.h,
            "h_formula": class_number_by_formula(order),
            "forms": [list(f) for f in data.forms],
        })
        return (payload,)

    @staticmethod
    def format_text(payload: Dict) -> str:
        forms = ", ".join(str(tuple(f)) for f in payload["forms"])
        return (f"Δ_O = {payload['disc']} = {payload['conductor']}²·({payload['fund_disc']})\n"
                f"h = {payload['h']}: {forms}")


class OrderUnits:
    """
    剩余单位群节点：|(O/NO)^×| 与 O^× 的像
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "disc": ("INT", {"default": -7, "max": -3}),
                "n": ("INT", {"default": 7, "min": 1}),
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("units",)
    FUNCTION = "compute"
    CATEGORY = "CM_ENTANGLE"

    def compute(self, disc: int, n: int) -> Tuple[Dict]:
        order = order_from_discriminant(disc)
        return ({
            "disc": disc,
            "modulus": n,
            "residue_unit_count": residue_unit_count(order, n),
            "unit_image_order": unit_image_order(order, n),
        },)

    @staticmethod
    def format_text(payload: Dict) -> str:
        return str(payload["residue_unit_count"])


class RayClassDegree:
    """
    射线类域次数节点
    """

    @classmethod
    def INPUT_TYPES(cls):
        return {
            "required": {
                "disc": ("INT", {"default": -7, "max": -3}),
                "n": ("INT", {"default": 7, "min": 1}),
            },
        }

    RETURN_TYPES = ("DICT",)
    RETURN_NAMES = ("degree",)
    FUNCTION = "compute"
    CATEGORY = "CM_ENTANGLE"

    def compute(self, disc: int, n: int) -> Tuple[Dict]:
        over_ring_class, over_k = ray_class_degree(order_from_discriminant(disc), n)
        return ({
            "disc": disc,
            "modulus": n,
            "deg_over_ring_class": over_ring_class,
            "deg_over_K": over_k,
        },)

    @staticmethod
    def format_text(payload: Dict) -> str:
        return (f"[H_{{{payload['modulus']},O}} : H_O] = {payload['deg_over_ring_class']}\n"
                f"[H_{{{payload['modulus']},O}} : K] = {payload['deg_over_K']}")
