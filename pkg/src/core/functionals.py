"""
Rado泛函枚举模块

负责三件事：
1. 用精确的Fourier–Motzkin消元枚举支撑集上可实现的有序划分；
2. 在划分之上枚举上/下候选泛函（形状只依赖支撑集，偏移另行检验）并做必要条件过滤；
3. 用Brauer模板为候选泛函寻找证书。

所有只依赖支撑集的中间结果都按 (变量个数, 排序后的指标) 缓存，系数只在求和时才用到。
"""

import itertools
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.core.feasibility import LinearSystem, integer_witness
from src.core.polynomial import IntPolynomial, MultiIndex
from src.errors import UnsupportedPolynomialError
from src.utils.helpers import has_zero_subset_sum

logger = logging.getLogger()

LOWER = "lower"
UPPER = "upper"
KINDS = (LOWER, UPPER)

# 候选状态
CANDIDATE = "candidate"
FILTERED_OUT = "filtered-out"
CERTIFIED = "certified"

# 过滤规则名
RULE_CONVEXITY = "convexity"
RULE_SINGLE_EQUATION = "single-equation"
RULE_LENGTH = "length"
RULE_DIFFERENCE = "difference"

Cells = Tuple[Tuple[MultiIndex, ...], ...]


def _cells_to_list(cells: Cells) -> List[List[List[int]]]:
    return [[list(alpha.exponents) for alpha in cell] for cell in cells]


def _cells_key(cells: Cells) -> Tuple:
    return tuple(tuple(alpha.exponents for alpha in cell) for cell in cells)


def _support_key(P: IntPolynomial) -> Tuple[MultiIndex, ...]:
    if P.is_zero():
        raise UnsupportedPolynomialError("零多项式没有Rado划分")
    return P.sorted_support()


@dataclass(frozen=True)
class OrderedPartition:
    """支撑集的有序划分 (J_0, …, J_ℓ)，按泛函值递增排列，并带一个整数见证 t"""

    cells: Cells
    witness: Tuple[int, ...]

    @property
    def length(self) -> int:
        """ℓ，即最后一个块的下标"""
        return len(self.cells) - 1

    def values(self, t: Optional[Sequence] = None) -> Tuple:
        """各块在 t（默认为见证）下的泛函值"""
        t = self.witness if t is None else t
        return tuple(sum(a * x for a, x in zip(cell[0].exponents, t)) for cell in self.cells)

    def is_realized_by(self, t: Sequence) -> bool:
        """t 是否严格为正，且恰好诱导出这个有序划分"""
        if any(x <= 0 for x in t):
            return False
        values = []
        for cell in self.cells:
            cell_values = {sum(a * x for a, x in zip(alpha.exponents, t)) for alpha in cell}
            if len(cell_values) != 1:
                return False
            values.append(cell_values.pop())
        return all(lo < hi for lo, hi in zip(values, values[1:]))

    def to_dict(self) -> Dict:
        return {"cells": _cells_to_list(self.cells), "witness": list(self.witness)}


@dataclass(frozen=True)
class FilterResult:
    """necessary_filter 的结果，reasons 中每一项形如 "规则: 说明" """

    passed: bool
    reasons: Tuple[str, ...] = ()

    @property
    def rule(self) -> Optional[str]:
        if not self.reasons:
            return None
        return self.reasons[0].split(":", 1)[0]

    def to_dict(self) -> Dict:
        return {"passed": self.passed, "reasons": list(self.reasons)}


@dataclass(frozen=True)
class BrauerCertificate:
    """Brauer模板证书

    templates[i] 为第 i 个变量的模板：("D", 0) 表示 t_i = d + e，
    ("A", j) 表示 t_i = a + j·d + e。
    """

    shift: int
    templates: Tuple[Tuple[str, int], ...]
    checks: Tuple[str, ...] = ()

    def values(self, a: int, d: int) -> Tuple[int, ...]:
        """在具体的 a, d 下给出 t"""
        return tuple(
            (d if kind == "D" else a + j * d) + self.shift
            for kind, j in self.templates
        )

    def to_dict(self) -> Dict:
        return {
            "e": self.shift,
            "templates": [{"kind": kind, "j": j, "e": self.shift} for kind, j in self.templates],
            "checks": list(self.checks),
        }


@dataclass(frozen=True)
class FunctionalShape:
    """不含具体偏移的泛函形状：有序划分、类型与阶 m

    offset_system 是把偏移方程组投影到块内偏移 δ_1 < … < δ_m 上得到的约束，
    δ_k 为块内第 k 个位置与锚点（块内最低位置）的泛函值之差。
    """

    partition: OrderedPartition
    kind: str
    order: int
    offset_system: LinearSystem = field(compare=False, repr=False, hash=False)

    def group_positions(self) -> Tuple[int, ...]:
        """有限偏移块所占的位置（按泛函值递增）"""
        top = self.partition.length
        if self.kind == LOWER:
            return tuple(range(0, self.order + 1))
        return tuple(range(top - self.order, top + 1))

    def gap(self) -> Optional[Tuple[int, int]]:
        """必须任意大的间隔所在的一对相邻位置，m = ℓ 时没有间隔"""
        top = self.partition.length
        if self.order == top:
            return None
        if self.kind == LOWER:
            return self.order, self.order + 1
        return top - self.order - 1, top - self.order

    def block_offsets(self, offsets: Sequence[int]) -> Tuple[int, ...]:
        """把按类型约定给出的偏移换成块内递增偏移"""
        offsets = tuple(offsets)
        return offsets if self.kind == LOWER else tuple(reversed(offsets))

    def offsets_allowed(self, offsets: Sequence[int]) -> bool:
        """检验具体偏移（按类型约定）能否与划分同时实现"""
        if len(offsets) != self.order:
            return False
        block = self.block_offsets(offsets)
        if any(int(x) != x or x < 1 for x in block):
            return False
        if any(lo >= hi for lo, hi in zip(block, block[1:])):
            return False
        return self.offset_system.holds_at(block)

    def rado_cells(self) -> Cells:
        """按类型约定排列的块：下泛函为递增顺序，上泛函为递减顺序"""
        cells = self.partition.cells
        return cells if self.kind == LOWER else tuple(reversed(cells))


@dataclass(frozen=True)
class CandidateFunctional:
    """候选Rado泛函

    offsets 按类型约定：下泛函为 d_1 < … < d_m，上泛函为 d_0 > … > d_{m−1}。
    """

    kind: str
    partition: OrderedPartition
    order: int
    offsets: Tuple[int, ...] = ()
    status: str = CANDIDATE
    reason: Optional[str] = None
    certificate: Optional[BrauerCertificate] = None
    shape: Optional[FunctionalShape] = field(default=None, compare=False, repr=False, hash=False)

    def rado_cells(self) -> Cells:
        cells = self.partition.cells
        return cells if self.kind == LOWER else tuple(reversed(cells))

    def weight_exponents(self) -> Tuple[int, ...]:
        """与 rado_cells 前 m+1 个块对应的底数指数：下泛函 d_0 = 0，上泛函 d_m = 0"""
        if self.kind == LOWER:
            return (0,) + tuple(self.offsets)
        return tuple(self.offsets) + (0,)

    def with_filter(self, result: FilterResult) -> "CandidateFunctional":
        if result.passed:
            return self
        return replace(self, status=FILTERED_OUT, reason="; ".join(result.reasons))

    def with_certificate(self, certificate: Optional[BrauerCertificate]) -> "CandidateFunctional":
        if certificate is None:
            return self
        return replace(self, status=CERTIFIED, certificate=certificate)

    def sort_key(self) -> Tuple:
        return (_cells_key(self.partition.cells), self.order, self.offsets)

    def to_dict(self) -> Dict:
        data = {
            "kind": self.kind,
            "order": self.order,
            "cells": _cells_to_list(self.rado_cells()),
            "offsets": list(self.offsets),
            "witness": list(self.partition.witness),
            "status": self.status,
        }
        if self.reason:
            data["reason"] = self.reason
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_dict()
        return data


@dataclass(frozen=True)
class MinimalCell:
    """极小Rado集候选 J_0 及其注记"""

    cell: Tuple[MultiIndex, ...]
    homogeneous: bool
    coefficient_sum: int
    offsets: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> Dict:
        return {
            "cell": [list(alpha.exponents) for alpha in self.cell],
            "homogeneous": self.homogeneous,
            "coefficient_sum": self.coefficient_sum,
            "offsets": None if self.offsets is None else list(self.offsets),
        }


# ---- 可实现的有序划分 ----

def _difference_row(alpha: MultiIndex, beta: MultiIndex, width: int) -> List[int]:
    """φ(α) − φ(β) 在 t 上的系数，补零到 width 个变量"""
    row = list(alpha.difference(beta))
    return row + [0] * (width - len(row))


def _unit_row(index: int, width: int) -> List[int]:
    row = [0] * width
    row[index] = 1
    return row


def _cell_equalities(system: LinearSystem, cells: Sequence[Sequence[MultiIndex]], width: int) -> None:
    for cell in cells:
        for alpha in cell[1:]:
            system.add_equality(_difference_row(alpha, cell[0], width))


def _prefix_system(arity: int, cells: Sequence[Sequence[MultiIndex]],
                   remaining: Sequence[MultiIndex]) -> LinearSystem:
    # 齐次系统，严格不等式按比例放大后写成 ≥ 1
    system = LinearSystem(arity)
    for i in range(arity):
        system.add_inequality(_unit_row(i, arity), -1)
    _cell_equalities(system, cells, arity)
    for lower, upper in zip(cells, cells[1:]):
        system.add_inequality(_difference_row(upper[0], lower[0], arity), -1)
    if cells:
        last = cells[-1][0]
        for beta in remaining:
            system.add_inequality(_difference_row(beta, last, arity), -1)
    return system


@lru_cache(maxsize=256)
def _orderings(arity: int, elements: Tuple[MultiIndex, ...]) -> Tuple[OrderedPartition, ...]:
    found: List[OrderedPartition] = []

    def extend(cells: List[Tuple[MultiIndex, ...]], remaining: Tuple[MultiIndex, ...]) -> None:
        for size in range(1, len(remaining) + 1):
            for cell in itertools.combinations(remaining, size):
                rest = tuple(alpha for alpha in remaining if alpha not in cell)
                system = _prefix_system(arity, cells + [cell], rest)
                if rest:
                    if system.is_feasible():
                        extend(cells + [cell], rest)
                    continue
                point = system.solve()
                if point is not None:
                    found.append(OrderedPartition(tuple(cells + [cell]), integer_witness(point)))

    extend([], elements)
    found.sort(key=lambda p: (len(p.cells), _cells_key(p.cells)))
    logger.debug(f"支撑集大小 {len(elements)}：可实现的有序划分 {len(found)} 个")
    return tuple(found)


def achievable_orderings(P: IntPolynomial) -> List[OrderedPartition]:
    """枚举支撑集上可由严格正的 t 实现的全部有序划分

    Args:
        P: 非零多项式

    Returns:
        有序划分列表，每个都带整数见证，顺序确定
    """
    return list(_orderings(P.arity, _support_key(P)))


# ---- 形状 ----

def _recession_feasible(arity: int, partition: OrderedPartition,
                        group: Sequence[int], gap: Optional[Tuple[int, int]]) -> bool:
    """是否存在方向 r（各分量 ≥ 1），使块内偏移不变而间隔无界增长"""
    cells = partition.cells
    system = LinearSystem(arity)
    for i in range(arity):
        system.add_inequality(_unit_row(i, arity), -1)
    _cell_equalities(system, cells, arity)
    anchor = cells[group[0]][0]
    for position in group[1:]:
        system.add_equality(_difference_row(cells[position][0], anchor, arity))
    for lower, upper in zip(cells, cells[1:]):
        system.add_inequality(_difference_row(upper[0], lower[0], arity))
    if gap is not None:
        system.add_inequality(_difference_row(cells[gap[1]][0], cells[gap[0]][0], arity), -1)
    return system.is_feasible()


def _offset_system(arity: int, partition: OrderedPartition, group: Sequence[int]) -> LinearSystem:
    """变量 (t_1..t_n, δ_1..δ_m) 上的偏移方程组，投影到 δ 上"""
    cells = partition.cells
    m = len(group) - 1
    width = arity + m
    system = LinearSystem(width)
    for i in range(arity):
        system.add_inequality(_unit_row(i, width), 0, strict=True)
    _cell_equalities(system, cells, width)
    anchor = cells[group[0]][0]
    for k, position in enumerate(group[1:]):
        row = _difference_row(cells[position][0], anchor, width)
        row[arity + k] = -1
        system.add_equality(row)
    for lower, upper in zip(cells, cells[1:]):
        system.add_inequality(_difference_row(upper[0], lower[0], width), 0, strict=True)
    return system.project(range(arity, width))


@lru_cache(maxsize=256)
def _shapes(arity: int, elements: Tuple[MultiIndex, ...], kind: str) -> Tuple[FunctionalShape, ...]:
    shapes = []
    for partition in _orderings(arity, elements):
        top = partition.length
        for order in range(top + 1):
            probe = FunctionalShape(partition, kind, order, LinearSystem(order))
            group = probe.group_positions()
            if not _recession_feasible(arity, partition, group, probe.gap()):
                continue
            shapes.append(FunctionalShape(partition, kind, order, _offset_system(arity, partition, group)))
    logger.debug(f"{kind} 形状 {len(shapes)} 个")
    return tuple(shapes)


def functional_shapes(P: IntPolynomial, kind: str) -> List[FunctionalShape]:
    """枚举与偏移无关的泛函形状（有序划分, 阶），只保留无界间隔可实现的

    Args:
        P: 非零多项式
        kind: "lower" 或 "upper"

    Returns:
        形状列表
    """
    if kind not in KINDS:
        raise ValueError(f"未知的泛函类型: {kind}")
    return list(_shapes(P.arity, _support_key(P), kind))


def shape_offsets(shape: FunctionalShape, d_max: int) -> List[Tuple[int, ...]]:
    """形状在偏移上限 d_max 内允许的全部偏移（按类型约定）"""
    if shape.order == 0:
        return [()]
    allowed = []
    for block in itertools.combinations(range(1, d_max + 1), shape.order):
        offsets = block if shape.kind == LOWER else tuple(reversed(block))
        if shape.offsets_allowed(offsets):
            allowed.append(offsets)
    return allowed


def candidate_functionals(P: IntPolynomial, kind: str, d_max: int) -> List[CandidateFunctional]:
    """枚举偏移不超过 d_max 的候选泛函

    这是真正Rado泛函的超集，用来做否定结论是可靠的。

    Args:
        P: 非零多项式
        kind: "lower" 或 "upper"
        d_max: 偏移上限，至少为1

    Returns:
        状态为 candidate 的候选列表
    """
    if d_max < 1:
        raise ValueError(f"d_max 必须至少为1: {d_max}")
    candidates = []
    for shape in functional_shapes(P, kind):
        for offsets in shape_offsets(shape, d_max):
            candidates.append(CandidateFunctional(kind, shape.partition, shape.order, offsets, shape=shape))
    candidates.sort(key=CandidateFunctional.sort_key)
    logger.info(f"{kind} 候选泛函 {len(candidates)} 个 (d_max={d_max})")
    return candidates


# ---- 必要条件过滤 ----

def _in_affine_hull(cell: Sequence[MultiIndex], beta: MultiIndex) -> bool:
    base = cell[0]
    rows = [list(alpha.difference(base)) for alpha in cell[1:]]
    if not rows:
        return False
    rank = sympy.Matrix(rows).rank()
    return sympy.Matrix(rows + [list(beta.difference(base))]).rank() == rank


def _is_two_variable_difference(diff: Sequence[int]) -> bool:
    nonzero = [v for v in diff if v != 0]
    return len(nonzero) == 2 and nonzero[0] == -nonzero[1]


def _text(alpha: MultiIndex) -> str:
    return str(alpha.exponents)


@lru_cache(maxsize=4096)
def _filter_cells(cells: Cells, kind: str, order: int) -> FilterResult:
    reasons: List[str] = []
    support = [alpha for cell in cells for alpha in cell]
    top = len(cells) - 1
    group = range(0, order + 1) if kind == LOWER else range(top - order, top + 1)

    for i, cell in enumerate(cells):
        if len(cell) > 1:
            for beta in support:
                if beta not in cell and _in_affine_hull(cell, beta):
                    reasons.append(f"{RULE_CONVEXITY}: 块 {i} 的仿射包含有 {_text(beta)}")
                    break
        for alpha, beta in itertools.combinations(cell, 2):
            diff = [v for v in alpha.difference(beta) if v != 0]
            if not has_zero_subset_sum(diff):
                reasons.append(f"{RULE_SINGLE_EQUATION}: 块 {i} 中 {_text(alpha)} − {_text(beta)} 不是正则线性型")
            if (alpha + beta).length <= 2 and alpha.degree != beta.degree:
                reasons.append(f"{RULE_LENGTH}: 块 {i} 中 {_text(alpha)} 与 {_text(beta)} 次数不同")

    for i, j in itertools.combinations(group, 2):
        for alpha in cells[i]:
            for beta in cells[j]:
                if (alpha + beta).length <= 2:
                    reasons.append(f"{RULE_LENGTH}: 有限偏移块 {i} 与 {j} 中 {_text(alpha)}, {_text(beta)}")
                if _is_two_variable_difference(alpha.difference(beta)):
                    reasons.append(f"{RULE_DIFFERENCE}: 有限偏移块 {i} 与 {j} 由二元差型相连")

    return FilterResult(not reasons, tuple(reasons))


def necessary_filter(candidate) -> FilterResult:
    """对候选泛函（或形状）应用必要条件

    规则：块的凸性、块内生成元的单方程正则性、有限偏移块间的长度条件、
    以及有限偏移块间二元差型 λ(z_a − z_b) 的排除。结果只依赖 (划分, 类型, 阶)。

    Args:
        candidate: CandidateFunctional 或 FunctionalShape

    Returns:
        过滤结果，列出全部违反的规则
    """
    return _filter_cells(candidate.partition.cells, candidate.kind, candidate.order)


@lru_cache(maxsize=256)
def _surviving(arity: int, elements: Tuple[MultiIndex, ...], kind: str) -> Tuple[FunctionalShape, ...]:
    return tuple(shape for shape in _shapes(arity, elements, kind) if necessary_filter(shape).passed)


def surviving_shapes(P: IntPolynomial, kind: str) -> List[FunctionalShape]:
    """通过必要条件过滤的形状"""
    if kind not in KINDS:
        raise ValueError(f"未知的泛函类型: {kind}")
    return list(_surviving(P.arity, _support_key(P), kind))


# ---- Brauer证书 ----

def _template_form(choice: Tuple[str, int]) -> Tuple[int, int]:
    kind, j = choice
    return (0, 1) if kind == "D" else (1, j)


def _phi_form(alpha: MultiIndex, forms: Sequence[Tuple[int, int]], shift: int) -> Tuple[int, int, int]:
    ca = sum(e * f[0] for e, f in zip(alpha.exponents, forms))
    cd = sum(e * f[1] for e, f in zip(alpha.exponents, forms))
    return ca, cd, shift * alpha.degree


def _check_template(cells: Cells, group: Sequence[int], gap: Optional[Tuple[int, int]],
                    block: Sequence[int], forms: Sequence[Tuple[int, int]], shift: int) -> Optional[List[str]]:
    values = []
    for cell in cells:
        cell_forms = {_phi_form(alpha, forms, shift) for alpha in cell}
        if len(cell_forms) != 1:
            return None
        values.append(cell_forms.pop())

    checks = []
    anchor = values[group[0]]
    for k, position in enumerate(group[1:]):
        v = values[position]
        if v[0] != anchor[0] or v[1] != anchor[1] or v[2] - anchor[2] != block[k]:
            return None
        checks.append(f"φ(J{position}) − φ(J{group[0]}) = {block[k]}")

    for i in range(len(values) - 1):
        lo, hi = values[i], values[i + 1]
        ca, cd, const = hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]
        if ca < 0 or cd < 0:
            return None
        if gap == (i, i + 1):
            if ca == 0 and cd == 0:
                return None
            checks.append(f"φ(J{i + 1}) − φ(J{i}) = {ca}a + {cd}d + {const} → ∞")
        else:
            if ca == 0 and cd == 0 and const <= 0:
                return None
            checks.append(f"φ(J{i + 1}) − φ(J{i}) = {ca}a + {cd}d + {const} > 0")
    return checks


@lru_cache(maxsize=4096)
def _certificate(arity: int, cells: Cells, kind: str, order: int, offsets: Tuple[int, ...],
                 j_max: int, e_min: int, e_max: int) -> Optional[BrauerCertificate]:
    top = len(cells) - 1
    if kind == LOWER:
        group = tuple(range(0, order + 1))
        gap = None if order == top else (order, order + 1)
        block = offsets
    else:
        group = tuple(range(top - order, top + 1))
        gap = None if order == top else (top - order - 1, top - order)
        block = tuple(reversed(offsets))

    used = [i for i in range(arity) if any(alpha.exponents[i] for cell in cells for alpha in cell)]
    choices = [("D", 0)] + [("A", j) for j in range(j_max + 1)]
    for assignment in itertools.product(choices, repeat=len(used)):
        templates = [("D", 0)] * arity
        for i, choice in zip(used, assignment):
            templates[i] = choice
        forms = [_template_form(choice) for choice in templates]
        for shift in range(e_min, e_max + 1):
            checks = _check_template(cells, group, gap, block, forms, shift)
            if checks is not None:
                return BrauerCertificate(shift, tuple(templates), tuple(checks))
    return None


def brauer_certificate(candidate: CandidateFunctional, j_max: int,
                       e_range: Tuple[int, int]) -> Optional[BrauerCertificate]:
    """为候选泛函搜索Brauer模板证书

    每个 t_i 取 d + e 或 a + j·d + e（0 ≤ j ≤ j_max），e 在 e_range 内公用。
    偏移等式须在 (a, d) 上恒等成立，相邻块的顺序按系数判定，间隔须随 a 或 d 增长。

    Args:
        candidate: 已通过必要条件过滤的候选
        j_max: 模板中 d 的最大倍数
        e_range: (e_min, e_max)

    Returns:
        找到时返回证书，否则返回None
    """
    e_min, e_max = e_range
    certificate = _certificate(len(candidate.partition.witness), candidate.partition.cells,
                               candidate.kind, candidate.order, tuple(candidate.offsets),
                               j_max, e_min, e_max)
    if certificate is None:
        logger.debug(f"未找到证书: {candidate.kind} 阶 {candidate.order} 偏移 {candidate.offsets}")
    return certificate


# ---- 极小块 ----

def minimal_cells(P: IntPolynomial, d_max: Optional[int] = None) -> List[MinimalCell]:
    """所有通过过滤的下形状的首块 J_0

    Args:
        P: 非零多项式
        d_max: 若给出，为每个块记录 d_max 内实现它的最小偏移

    Returns:
        按块排序的极小块列表，带齐次性与系数和
    """
    realized: Dict[Tuple[MultiIndex, ...], List[Tuple[int, ...]]] = {}
    for shape in surviving_shapes(P, LOWER):
        options = realized.setdefault(shape.partition.cells[0], [])
        if shape.order == 0:
            options.append(())
        elif d_max is not None:
            options.extend(shape_offsets(shape, d_max)[:1])

    result = []
    for cell in sorted(realized, key=lambda c: tuple(alpha.exponents for alpha in c)):
        options = realized[cell]
        result.append(MinimalCell(
            cell=cell,
            homogeneous=len({alpha.degree for alpha in cell}) == 1,
            coefficient_sum=sum(P.coefficient(alpha) for alpha in cell),
            offsets=min(options, key=lambda o: (len(o), o)) if options else None,
        ))
    return result
