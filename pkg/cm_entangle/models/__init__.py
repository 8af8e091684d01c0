from .quad_orders import Order, OrderResidueElement
from .weierstrass import Curve
from .cm_registry import CMCurveRegistry, get_registry

__all__ = ['Order', 'OrderResidueElement', 'Curve', 'CMCurveRegistry', 'get_registry']
