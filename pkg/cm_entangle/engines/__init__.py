from abc import ABC, abstractmethod
from typing import Dict, Optional

from ..models.weierstrass import Curve

class GaloisImageEngine(ABC):
    """
    抽象基类，定义Galois像引擎的接口：给出ρ_{E,N}的像在(O/NO)^×中的大小
    """

    @abstractmethod
    def image_order(self, curve: Curve, modulus: int) -> Optional[int]:
        """
        计算或预测 Gal(K(E[N])/K) 的阶

        Args:
            curve: CM曲线
            modulus: 模数N

        Returns:
            Optional[int]: 像的阶；无法判定时为None
        """
        pass

    @abstractmethod
    def describe(self, curve: Curve, modulus: int) -> Dict:
        """
        给出可序列化的详细结果

        Args:
            curve: CM曲线
            modulus: 模数N

        Returns:
            Dict: 引擎相关的结果文档
        """
        pass

from .entangle_engine import TheoryEngine
from .frobenius_engine import FrobeniusEngine

__all__ = ['GaloisImageEngine', 'TheoryEngine', 'FrobeniusEngine']
