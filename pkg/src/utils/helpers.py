"""
辅助函数模块，提供各种通用工具函数
"""

import os
import math
import logging
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from sympy import multiplicity

logger = logging.getLogger()

# 零的p进赋值视为无穷大
INFINITE_VALUATION = math.inf

def ensure_directory_exists(directory: str) -> None:
    """确保目录存在，如果不存在则创建

    Args:
        directory: 目录路径
    """
    if directory and not os.path.exists(directory):
        os.makedirs(directory, exist_ok=True)
        logger.info(f"创建目录: {directory}")

def p_valuation(value: int, p: int) -> Union[int, float]:
    """计算整数的p进赋值

    Args:
        value: 整数
        p: 素数

    Returns:
        最大的k使得p^k整除value；value为0时返回无穷大
    """
    if value == 0:
        return INFINITE_VALUATION
    return int(multiplicity(p, abs(value)))

def integer_content(values: Iterable[int]) -> int:
    """计算一组整数的最大公因数（内容）

    Args:
        values: 整数序列

    Returns:
        非负的最大公因数，全为零时返回0
    """
    return reduce(math.gcd, (abs(v) for v in values), 0)

def has_zero_subset_sum(values: Sequence[int]) -> bool:
    """判断是否存在和为零的非空子集

    Args:
        values: 整数序列（通常已去掉零）

    Returns:
        存在非空零和子集时返回True
    """
    reachable = set()
    for v in values:
        if v == 0:
            return True
        # 非空子集的和：新元素单独出现，或追加到已有子集
        reachable |= {v} | {s + v for s in reachable}
        if 0 in reachable:
            return True
    return False

def common_denominator(values: Iterable[Fraction]) -> int:
    """计算一组有理数分母的最小公倍数

    Args:
        values: 有理数序列

    Returns:
        最小公倍数，序列为空时返回1
    """
    return reduce(lambda a, b: a * b // math.gcd(a, b),
                  (Fraction(v).denominator for v in values), 1)

def format_fraction(value: Union[int, Fraction]) -> str:
    """把有理数格式化为 "p/q" 字符串，整数不带分母

    Args:
        value: 整数或有理数

    Returns:
        格式化后的字符串
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
