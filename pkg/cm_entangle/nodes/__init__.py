# 导出节点模块
from .curve_nodes import CurveInvariants, CurveConductor, QuadraticTwist, FormalGroupHeight
from .order_nodes import OrderClassGroup, OrderUnits, RayClassDegree
from .entangle_nodes import ClassifyEntanglement, FrobeniusImage, VerifyRegistry

__all__ = [
    'CurveInvariants',
    'CurveConductor',
    'QuadraticTwist',
    'FormalGroupHeight',
    'OrderClassGroup',
    'OrderUnits',
    'RayClassDegree',
    'ClassifyEntanglement',
    'FrobeniusImage',
    'VerifyRegistry'
]
