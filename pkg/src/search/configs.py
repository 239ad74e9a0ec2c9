"""
单色构型搜索

两种构型：
- product: {x + p(y) : p ∈ 多项式组} ∪ {xy}，多项式须在0处取0；
- shifted: {x + p(y) : p ∈ 多项式组} ∪ {xy + x + dy}，d 为有理数，只取使 dy 为非负整数的 y，d < 0 时没有可取的 y。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.config import config
from src.core.polynomial import MonovariatePoly
from src.search.colorings import Coloring
from src.utils.helpers import format_fraction

logger = logging.getLogger()

SHAPE_PRODUCT = "product"
SHAPE_SHIFTED = "shifted"
SHAPES = (SHAPE_PRODUCT, SHAPE_SHIFTED)


@dataclass(frozen=True)
class ConfigWitness:
    """找到的单色构型"""

    x: int
    y: int
    members: Tuple[int, ...]
    color: int

    def to_dict(self) -> Dict:
        return {"x": self.x, "y": self.y, "members": list(self.members), "color": self.color}


@dataclass(frozen=True)
class ConfigSearch:
    """find_config_witness 的结果；未找到不构成任何否定"""

    shape: str
    bound: int
    witness: Optional[ConfigWitness]
    tried: int

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> Dict:
        return {"shape": self.shape, "bound": self.bound, "found": self.found, "tried": self.tried,
                "witness": None if self.witness is None else self.witness.to_dict()}


def configuration_members(shape: str, polynomials: Sequence[MonovariatePoly], x: int, y: int,
                          d: Fraction = Fraction(0)) -> Optional[Tuple[int, ...]]:
    """构型在 (x, y) 处的全部元素（按构型中的顺序）；有元素不是正整数时返回None"""
    members = [x + p.evaluate(y) for p in polynomials]
    if shape == SHAPE_PRODUCT:
        members.append(x * y)
    else:
        offset = Fraction(d) * y
        if offset.denominator != 1 or offset < 0:
            return None
        members.append(x * y + x + int(offset))
    if min(members) < 1:
        return None
    return tuple(int(m) for m in members)


def _ordered_pairs(lower: int, bound: int):
    """x, y ∈ [lower, bound]，按 x + y 递增、再按 x 递增"""
    for total in range(2 * lower, 2 * bound + 1):
        for x in range(max(lower, total - bound), min(bound, total - lower) + 1):
            yield x, total - x


def find_config_witness(coloring: Coloring, polynomials: Sequence[MonovariatePoly], shape: str = SHAPE_PRODUCT,
                        bound: Optional[int] = None, d: Union[int, Fraction] = 0,
                        lower: Optional[int] = None) -> ConfigSearch:
    """在 x, y ≤ bound 内搜索单色构型

    Args:
        coloring: 着色
        polynomials: 多项式组 p, q, …，都须在0处取0
        shape: "product" 或 "shifted"
        bound: 搜索上界，默认取配置 search.config_bound
        d: shifted 构型中的有理数 d
        lower: x, y 的下限，默认取配置 search.config_min

    Returns:
        ConfigSearch，witness 为 (x + y, x) 最小的单色构型
    """
    if shape not in SHAPES:
        raise ValueError(f"未知的构型: {shape}")
    if not polynomials:
        raise ValueError("多项式组不能为空")
    for p in polynomials:
        if p.evaluate(0) != 0:
            raise ValueError(f"多项式 {p.to_text()} 在0处不为0")
    bound = int(bound if bound is not None else config.get("search", "config_bound"))
    lower = int(lower if lower is not None else config.get("search", "config_min"))
    d = Fraction(d)
    if lower < 1:
        raise ValueError(f"下限必须为正: {lower}")

    tried = 0
    for x, y in _ordered_pairs(lower, bound):
        members = configuration_members(shape, polynomials, x, y, d)
        if members is None:
            continue
        if not coloring.covers(max(members)):
            continue
        tried += 1
        colors = {coloring.color(m) for m in members}
        if len(colors) == 1:
            witness = ConfigWitness(x, y, members, colors.pop())
            logger.info(f"构型 {shape} 的单色见证 (x, y) = ({x}, {y})：{members}")
            return ConfigSearch(shape, bound, witness, tried)
    logger.info(f"x, y ≤ {bound} 内未找到 {shape} 构型（d = {format_fraction(d)}）的单色见证")
    return ConfigSearch(shape, bound, None, tried)


def describe_configuration(shape: str, polynomials: Sequence[MonovariatePoly],
                           d: Union[int, Fraction] = 0) -> str:
    """构型的文字描述，如 {x, x + y, x*y}"""
    parts: List[str] = []
    for p in polynomials:
        text = p.to_text().replace("w", "y")
        parts.append("x" if p.is_zero() else f"x + {text}")
    if shape == SHAPE_PRODUCT:
        parts.append("x*y")
    else:
        parts.append(f"x*y + x + {format_fraction(Fraction(d))}*y")
    return "{" + ", ".join(parts) + "}"
