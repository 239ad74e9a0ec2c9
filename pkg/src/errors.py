"""
异常定义模块
"""

from typing import Optional


class RadoLabError(Exception):
    """工具内所有可预期错误的基类"""


class ParseError(RadoLabError, ValueError):
    """多项式表达式解析错误"""

    def __init__(self, message: str, position: Optional[int] = None):
        """初始化解析错误

        Args:
            message: 错误描述
            position: 出错位置（源文本中从0开始的偏移），未知时为None
        """
        self.message = message
        self.position = position
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} (位置 {position})")


class UnsupportedPolynomialError(RadoLabError, ValueError):
    """多项式不满足某项操作的前提条件"""


class HenselLiftError(RadoLabError, ArithmeticError):
    """起始近似不满足Hensel判据，无法提升"""
