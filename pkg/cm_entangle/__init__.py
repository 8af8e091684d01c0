NODE_CLASS_MAPPINGS = {}
NODE_DISPLAY_NAME_MAPPINGS = {}

# 导入节点模块
from .nodes.curve_nodes import CurveInvariants, CurveConductor, QuadraticTwist, FormalGroupHeight
from .nodes.order_nodes import OrderClassGroup, OrderUnits, RayClassDegree
from .nodes.entangle_nodes import ClassifyEntanglement, FrobeniusImage, VerifyRegistry

# 注册节点，键即命令行子命令名
NODE_CLASS_MAPPINGS["classify"] = ClassifyEntanglement
NODE_CLASS_MAPPINGS["conductor"] = CurveConductor
NODE_CLASS_MAPPINGS["invariants"] = CurveInvariants
NODE_CLASS_MAPPINGS["twist"] = QuadraticTwist
NODE_CLASS_MAPPINGS["classgroup"] = OrderClassGroup
NODE_CLASS_MAPPINGS["order-units"] = OrderUnits
NODE_CLASS_MAPPINGS["ray-degree"] = RayClassDegree
NODE_CLASS_MAPPINGS["formal-height"] = FormalGroupHeight
NODE_CLASS_MAPPINGS["frobenius-image"] = FrobeniusImage
NODE_CLASS_MAPPINGS["verify-registry"] = VerifyRegistry

# 设置节点显示名称
NODE_DISPLAY_NAME_MAPPINGS["classify"] = "除法域纠缠分类"
NODE_DISPLAY_NAME_MAPPINGS["conductor"] = "曲线导子（Tate算法）"
NODE_DISPLAY_NAME_MAPPINGS["invariants"] = "曲线不变量"
NODE_DISPLAY_NAME_MAPPINGS["twist"] = "二次扭"
NODE_DISPLAY_NAME_MAPPINGS["classgroup"] = "虚二次序类群"
NODE_DISPLAY_NAME_MAPPINGS["order-units"] = "剩余单位群阶"
NODE_DISPLAY_NAME_MAPPINGS["ray-degree"] = "射线类域次数"
NODE_DISPLAY_NAME_MAPPINGS["formal-height"] = "约化形式群高度"
NODE_DISPLAY_NAME_MAPPINGS["frobenius-image"] = "Frobenius像"
NODE_DISPLAY_NAME_MAPPINGS["verify-registry"] = "注册表自检"

__all__ = ['NODE_CLASS_MAPPINGS', 'NODE_DISPLAY_NAME_MAPPINGS']
