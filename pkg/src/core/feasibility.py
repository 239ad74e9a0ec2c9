"""
精确线性可行性模块，基于有理数上的Fourier–Motzkin消元

约束统一写成 Σ a_i x_i + c (rel) 0，其中 rel 为 "==", ">=" 或 ">"。
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.utils.helpers import common_denominator, integer_content

logger = logging.getLogger()

EQ = "=="
GE = ">="
GT = ">"


@dataclass(frozen=True)
class LinearConstraint:
    """单条线性约束 Σ a_i x_i + c (rel) 0"""

    coefficients: Tuple[Fraction, ...]
    constant: Fraction
    relation: str

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.coefficients, point)), Fraction(0)) + self.constant

    def holds_at(self, point: Sequence[Fraction]) -> bool:
        v = self.value(point)
        if self.relation == EQ:
            return v == 0
        if self.relation == GE:
            return v >= 0
        return v > 0

    def is_constant(self) -> bool:
        return not any(self.coefficients)

    def constant_holds(self) -> bool:
        """系数全为零时约束本身是否成立"""
        if self.relation == EQ:
            return self.constant == 0
        if self.relation == GE:
            return self.constant >= 0
        return self.constant > 0


def _normalize(coefficients: Sequence[Fraction], constant: Fraction,
               relation: str) -> LinearConstraint:
    """化为互素整数系数；等式再把首个非零系数变为正"""
    values = [Fraction(a) for a in coefficients] + [Fraction(constant)]
    scale = common_denominator(values)
    integers = [int(v * scale) for v in values]
    g = integer_content(integers)
    if g > 1:
        integers = [v // g for v in integers]
    if relation == EQ:
        leading = next((v for v in integers if v != 0), 0)
        if leading < 0:
            integers = [-v for v in integers]
    return LinearConstraint(tuple(Fraction(v) for v in integers[:-1]), Fraction(integers[-1]), relation)


class LinearSystem:
    """有理数线性约束系统，支持可行性判定、求解与投影"""

    def __init__(self, num_vars: int, constraints: Sequence[LinearConstraint] = ()):
        """初始化线性系统

        Args:
            num_vars: 变量个数
            constraints: 初始约束
        """
        self.num_vars = num_vars
        self.constraints: List[LinearConstraint] = []
        for constraint in constraints:
            self._append(constraint.coefficients, constraint.constant, constraint.relation)

    def _append(self, coefficients: Sequence, constant, relation: str) -> None:
        if len(coefficients) != self.num_vars:
            raise ValueError(f"约束长度 {len(coefficients)} 与变量个数 {self.num_vars} 不符")
        if relation not in (EQ, GE, GT):
            raise ValueError(f"未知的关系: {relation}")
        self.constraints.append(_normalize(coefficients, constant, relation))

    def add_equality(self, coefficients: Sequence, constant=0) -> None:
        self._append(coefficients, constant, EQ)

    def add_inequality(self, coefficients: Sequence, constant=0, strict: bool = False) -> None:
        self._append(coefficients, constant, GT if strict else GE)

    def copy(self) -> "LinearSystem":
        system = LinearSystem(self.num_vars)
        system.constraints = list(self.constraints)
        return system

    def holds_at(self, point: Sequence) -> bool:
        point = [Fraction(x) for x in point]
        return all(c.holds_at(point) for c in self.constraints)

    # ---- 消元 ----

    @staticmethod
    def _prune(constraints: List[LinearConstraint]) -> Optional[List[LinearConstraint]]:
        """去掉恒真约束与被支配的重复不等式；出现矛盾时返回None"""
        equalities = set()
        tightest: Dict[Tuple[Fraction, ...], Tuple[Fraction, bool]] = {}
        for c in constraints:
            if c.is_constant():
                if not c.constant_holds():
                    return None
                continue
            if c.relation == EQ:
                equalities.add(c)
                continue
            strict = c.relation == GT
            known = tightest.get(c.coefficients)
            # 同一系数向量只保留常数最小（最紧）的那条
            if known is None or c.constant < known[0] or (c.constant == known[0] and strict):
                tightest[c.coefficients] = (c.constant, strict)
        pruned = sorted(equalities, key=lambda c: (c.coefficients, c.constant))
        for coefficients in sorted(tightest):
            constant, strict = tightest[coefficients]
            pruned.append(LinearConstraint(coefficients, constant, GT if strict else GE))
        return pruned

    @staticmethod
    def _eliminate(constraints: List[LinearConstraint], var: int) -> List[LinearConstraint]:
        pivot = next((c for c in constraints
                      if c.relation == EQ and c.coefficients[var] != 0), None)
        if pivot is not None:
            # 用等式代入消去该变量
            a = pivot.coefficients[var]
            result = []
            for c in constraints:
                if c is pivot:
                    continue
                b = c.coefficients[var]
                if b == 0:
                    result.append(c)
                    continue
                factor = b / a
                coefficients = [x - factor * y for x, y in zip(c.coefficients, pivot.coefficients)]
                result.append(_normalize(coefficients, c.constant - factor * pivot.constant, c.relation))
            return result

        lower, upper, rest = [], [], []
        for c in constraints:
            a = c.coefficients[var]
            if a > 0:
                lower.append(c)
            elif a < 0:
                upper.append(c)
            else:
                rest.append(c)
        for lo in lower:
            for hi in upper:
                a, b = lo.coefficients[var], -hi.coefficients[var]
                coefficients = [b * x + a * y for x, y in zip(lo.coefficients, hi.coefficients)]
                relation = GT if GT in (lo.relation, hi.relation) else GE
                rest.append(_normalize(coefficients, b * lo.constant + a * hi.constant, relation))
        return rest

    @staticmethod
    def _cost(constraints: List[LinearConstraint], var: int) -> int:
        if any(c.relation == EQ and c.coefficients[var] != 0 for c in constraints):
            return -1
        positive = sum(1 for c in constraints if c.coefficients[var] > 0)
        negative = sum(1 for c in constraints if c.coefficients[var] < 0)
        return positive * negative - positive - negative

    def _run(self, variables: Sequence[int]):
        """依次消去给定变量，返回 (各阶段记录, 剩余约束)；不可行时剩余约束为None"""
        current = self._prune(list(self.constraints))
        stages = []
        pending = list(variables)
        while pending and current is not None:
            var = min(pending, key=lambda v: (self._cost(current, v), v))
            pending.remove(var)
            stages.append((var, current))
            current = self._prune(self._eliminate(current, var))
        return stages, current

    def is_feasible(self) -> bool:
        _, remaining = self._run(range(self.num_vars))
        return remaining is not None

    def solve(self) -> Optional[Tuple[Fraction, ...]]:
        """求一个可行点，不可行时返回None

        回代时每个变量取区间内的最小整数（若存在），否则取区间中点。
        """
        stages, remaining = self._run(range(self.num_vars))
        if remaining is None:
            return None
        values: List[Optional[Fraction]] = [None] * self.num_vars
        for var, constraints in reversed(stages):
            values[var] = self._pick_value(var, constraints, values)
        point = tuple(v if v is not None else Fraction(0) for v in values)
        if not self.holds_at(point):
            logger.error(f"回代得到的点不满足约束: {point}")
            return None
        return point

    @staticmethod
    def _pick_value(var: int, constraints: List[LinearConstraint],
                    values: List[Optional[Fraction]]) -> Fraction:
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for c in constraints:
            a = c.coefficients[var]
            if a == 0:
                continue
            rest = c.constant + sum((b * (values[i] or 0) for i, b in enumerate(c.coefficients)
                                     if i != var and b != 0), Fraction(0))
            bound = -rest / a
            if c.relation == EQ:
                return bound
            strict = c.relation == GT
            if a > 0:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
            else:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
        if lo is None and hi is None:
            return Fraction(0)
        if lo is None:
            candidate = Fraction(math.floor(hi))
            return candidate - 1 if hi_strict and candidate == hi else candidate
        candidate = Fraction(math.ceil(lo))
        if lo_strict and candidate == lo:
            candidate += 1
        if hi is None or candidate < hi or (candidate == hi and not hi_strict):
            return candidate
        if lo == hi:
            return lo
        return (lo + hi) / 2

    def project(self, keep: Sequence[int]) -> "LinearSystem":
        """消去不在 keep 中的变量，得到 keep 上的约束系统（变量按 keep 的顺序重排）

        投影不可行时返回一个含矛盾约束 0 > 0 的系统。
        """
        keep = list(keep)
        drop = [v for v in range(self.num_vars) if v not in keep]
        _, remaining = self._run(drop)
        projected = LinearSystem(len(keep))
        if remaining is None:
            projected.constraints.append(LinearConstraint((Fraction(0),) * len(keep), Fraction(0), GT))
            return projected
        for c in remaining:
            projected._append([c.coefficients[v] for v in keep], c.constant, c.relation)
        return projected

    def __len__(self) -> int:
        return len(self.constraints)


def integer_witness(point: Sequence[Fraction]) -> Tuple[int, ...]:
    """把有理可行点乘以公分母化为整数点（只适用于齐次系统）"""
    scale = common_denominator(point)
    return tuple(int(Fraction(x) * scale) for x in point)
