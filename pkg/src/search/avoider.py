"""
避免单色解的着色搜索

解超图的顶点是 [1..N]，每个解的取值集合是一条超边；要求没有超边单色。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.polynomial import IntPolynomial
from src.search.colorings import Coloring
from src.search.solutions import SolutionInstance, enumerate_solutions, monochromatic_solutions

logger = logging.getLogger()


@dataclass(frozen=True)
class AvoidanceResult:
    """find_avoiding_coloring 的结果；coloring 为None时是 (k, N) 上的穷举否定"""

    colors: int
    bound: int
    coloring: Optional[Coloring]
    nodes: int
    edges: int

    @property
    def found(self) -> bool:
        return self.coloring is not None

    def to_dict(self) -> Dict:
        data = {"k": self.colors, "N": self.bound, "nodes": self.nodes, "edges": self.edges,
                "found": self.found}
        if self.coloring is not None:
            data["coloring"] = list(self.coloring.table)
        return data


@dataclass(frozen=True)
class ColoringCheck:
    """check_coloring_avoids 的结果，violation 为字典序最小的单色解"""

    bound: int
    violation: Optional[SolutionInstance] = None

    @property
    def avoids(self) -> bool:
        return self.violation is None

    def to_dict(self) -> Dict:
        return {"N": self.bound, "avoids": self.avoids,
                "violation": None if self.violation is None else self.violation.to_dict()}


def solution_hyperedges(solutions: Sequence[SolutionInstance]) -> List[Tuple[int, ...]]:
    """去重后的取值集合，按 (大小, 元素) 排序"""
    edges = {instance.values for instance in solutions}
    return sorted(edges, key=lambda edge: (len(edge), edge))


class _Search:
    """带前向检查的回溯：按数值顺序赋色，颜色从小到大尝试，新颜色至多比已用的多一种"""

    def __init__(self, edges: Sequence[Tuple[int, ...]], colors: int, bound: int):
        """初始化搜索状态

        Args:
            edges: 超边（各元素均在 [1, bound] 内）
            colors: 颜色数 k
            bound: 顶点上界 N
        """
        self.edges = list(edges)
        self.colors = colors
        self.bound = bound
        self.incidence: List[List[int]] = [[] for _ in range(bound + 1)]
        for index, edge in enumerate(self.edges):
            for v in edge:
                self.incidence[v].append(index)
        self.color = [0] * (bound + 1)
        # forbidden[c][v] 为真表示 v 不能取颜色 c
        self.forbidden = [[False] * (bound + 1) for _ in range(colors + 1)]
        self.nodes = 0

    def _propagate(self, v: int, c: int, stack: List[Tuple[int, int]]) -> bool:
        for index in self.incidence[v]:
            others = [u for u in self.edges[index] if u != v]
            if any(self.color[u] not in (0, c) for u in others):
                continue
            open_members = [u for u in others if self.color[u] == 0]
            if not open_members:
                return False
            if len(open_members) == 1:
                u = open_members[0]
                if not self.forbidden[c][u]:
                    self.forbidden[c][u] = True
                    stack.append((c, u))
        return True

    def _doomed(self, used: int) -> bool:
        limit = min(used + 1, self.colors)
        for u in range(1, self.bound + 1):
            if self.color[u] == 0 and all(self.forbidden[c][u] for c in range(1, limit + 1)):
                return True
        return False

    def run(self, v: int = 1, used: int = 0) -> bool:
        if v > self.bound:
            return True
        for c in range(1, min(used + 1, self.colors) + 1):
            if self.forbidden[c][v]:
                continue
            self.nodes += 1
            self.color[v] = c
            stack: List[Tuple[int, int]] = []
            next_used = max(used, c)
            if self._propagate(v, c, stack) and not self._doomed(next_used):
                if self.run(v + 1, next_used):
                    return True
            self.color[v] = 0
            while stack:
                cc, u = stack.pop()
                self.forbidden[cc][u] = False
        return False


def find_avoiding_coloring(P: IntPolynomial, colors: int, bound: int, allow_repeats: bool = True,
                           exclude_trivial: bool = False) -> AvoidanceResult:
    """搜索 [1..N] 的 k 着色，使 P = 0 没有单色解

    返回的着色在规范形式（颜色按首次出现顺序编号）下字典序最小；
    找不到时即为 (k, N) 上的穷举否定。

    Args:
        P: 多项式
        colors: 颜色数 k，至少为2
        bound: 上界 N
        allow_repeats: 解是否允许坐标重复
        exclude_trivial: 是否排除常数解

    Returns:
        AvoidanceResult
    """
    if colors < 2:
        raise ValueError(f"颜色数必须至少为2: {colors}")
    solutions = enumerate_solutions(P, bound, allow_repeats, exclude_trivial)
    edges = solution_hyperedges(solutions)
    logger.info(f"解超图：{bound} 个顶点，{len(edges)} 条超边，{colors} 种颜色")

    if any(len(edge) == 1 for edge in edges):
        logger.info("存在单点超边（常数解），任何着色都不能避免")
        return AvoidanceResult(colors, bound, None, 0, len(edges))

    search = _Search(edges, colors, bound)
    if search.run():
        coloring = Coloring.explicit(search.color[1:])
        logger.info(f"找到避免着色，搜索节点 {search.nodes}")
        return AvoidanceResult(colors, bound, coloring, search.nodes, len(edges))
    logger.info(f"不存在避免着色，搜索节点 {search.nodes}")
    return AvoidanceResult(colors, bound, None, search.nodes, len(edges))


def check_coloring_avoids(P: IntPolynomial, coloring: Coloring, bound: int, allow_repeats: bool = True,
                          exclude_trivial: bool = False) -> ColoringCheck:
    """检验着色在 [1..N] 上是否避免单色解

    Args:
        P: 多项式
        coloring: 着色，定义域须覆盖 [1..N]
        bound: 上界 N
        allow_repeats: 解是否允许坐标重复
        exclude_trivial: 是否排除常数解

    Returns:
        ColoringCheck，违反时给出字典序最小的单色解
    """
    if bound < 1:
        raise ValueError(f"上界必须至少为1: {bound}")
    if not coloring.covers(bound):
        raise ValueError(f"着色的定义域不覆盖 [1, {bound}]")
    colors = coloring.array(bound)
    violations = monochromatic_solutions(P, colors, bound, allow_repeats, exclude_trivial)
    if violations:
        logger.info(f"着色 {coloring.to_rule()} 在 N = {bound} 内有单色解 {violations[0].assignment}")
        return ColoringCheck(bound, violations[0])
    logger.info(f"着色 {coloring.to_rule()} 在 N = {bound} 内避免了全部单色解")
    return ColoringCheck(bound)
