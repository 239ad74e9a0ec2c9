"""
解枚举模块：在 [1..N]^n 中枚举多项式方程的全部解，并生成参数化解族
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.polynomial import IntPolynomial
from src.errors import UnsupportedPolynomialError

logger = logging.getLogger()

# int64 能安全容纳的量级
_INT64_SAFE = 2 ** 62

FAMILY_CONFIGURATION = "configuration"
FAMILY_SQUARES = "squares"


@dataclass(frozen=True)
class SolutionInstance:
    """一个解：赋值、取值集合与是否为常数解"""

    assignment: Tuple[int, ...]
    values: Tuple[int, ...] = ()
    trivial: bool = False

    @classmethod
    def of(cls, assignment: Sequence[int]) -> "SolutionInstance":
        assignment = tuple(int(v) for v in assignment)
        values = tuple(sorted(set(assignment)))
        return cls(assignment, values, len(values) == 1)

    def to_dict(self) -> Dict:
        return {"assignment": list(self.assignment), "values": list(self.values), "trivial": self.trivial}


def _solve_variable(P: IntPolynomial) -> int:
    """在出现的变量中选次数最低者求解，次数相同取下标最大的"""
    used = P.used_variables()
    degree = {i: max(alpha.exponents[i] for alpha in P.support()) for i in used}
    return min(used, key=lambda i: (degree[i], -i))


def _dtype(P: IntPolynomial, bound: int):
    magnitude = sum(abs(c) * bound ** alpha.degree for alpha, c in P.items())
    return np.int64 if magnitude < _INT64_SAFE else object


def _residual_coefficients(P: IntPolynomial, solve: int, free: Sequence[int],
                           fixed: Sequence[int], vector: np.ndarray, dtype) -> List[np.ndarray]:
    """固定前面的自由变量、最后一个自由变量取向量时，各次幂 x_solve^k 的系数数组"""
    top = max(alpha.exponents[solve] for alpha in P.support())
    coefficients = [np.zeros(len(vector), dtype=dtype) for _ in range(top + 1)]
    for alpha, c in P.items():
        scalar = c
        for variable, value in zip(free[:-1], fixed):
            scalar *= value ** alpha.exponents[variable]
        if free:
            term = scalar * vector ** alpha.exponents[free[-1]]
        else:
            term = np.full(len(vector), scalar, dtype=dtype)
        coefficients[alpha.exponents[solve]] = coefficients[alpha.exponents[solve]] + term
    return coefficients


def _slice_solutions(coefficients: List[np.ndarray], domain: np.ndarray,
                     mask: np.ndarray, bound: int) -> Iterator[Tuple[int, int]]:
    """给出 (向量下标, 求解变量取值)"""
    if len(coefficients) == 2:
        c0, c1 = coefficients
        active = c1 != 0
        numerator = -c0
        safe = np.where(active, c1, 1)
        divisible = active & (numerator % safe == 0)
        roots = np.where(divisible, numerator // safe, 0)
        valid = divisible & (roots >= 1) & (roots <= bound)
        for index in np.nonzero(valid)[0]:
            root = int(roots[index])
            if mask[root]:
                yield int(index), root
        # 系数全为零时求解变量可任取
        for index in np.nonzero(~active & (c0 == 0))[0]:
            for value in domain:
                yield int(index), int(value)
        return

    values = np.zeros((len(coefficients[0]), len(domain)), dtype=coefficients[0].dtype)
    grid = domain.astype(coefficients[0].dtype)
    for c in reversed(coefficients):
        values = values * grid[None, :] + c[:, None]
    for index, position in zip(*np.nonzero(values == 0)):
        yield int(index), int(domain[position])


def _box_solutions(P: IntPolynomial, domain: Sequence[int], bound: int) -> List[Tuple[int, ...]]:
    """所有坐标都取自 domain（⊆ [1, bound]）的解，按字典序排列"""
    domain = np.array(sorted(set(int(v) for v in domain)), dtype=np.int64)
    if len(domain) == 0:
        return []
    n = P.arity
    if not P.used_variables():
        if P.is_zero():
            return [tuple(int(v) for v in t) for t in itertools.product(domain, repeat=n)]
        return []

    mask = np.zeros(bound + 1, dtype=bool)
    mask[domain] = True
    dtype = _dtype(P, bound)
    solve = _solve_variable(P)
    free = [i for i in range(n) if i != solve]
    vector = domain.astype(dtype) if free else np.zeros(1, dtype=dtype)

    found = []
    for fixed in itertools.product(domain.tolist(), repeat=max(len(free) - 1, 0)):
        coefficients = _residual_coefficients(P, solve, free, fixed, vector, dtype)
        for index, root in _slice_solutions(coefficients, domain, mask, bound):
            assignment = [0] * n
            for variable, value in zip(free[:-1], fixed):
                assignment[variable] = value
            if free:
                assignment[free[-1]] = int(domain[index])
            assignment[solve] = root
            found.append(tuple(assignment))
    found.sort()
    return found


def _filtered(P: IntPolynomial, assignments: Iterable[Tuple[int, ...]], allow_repeats: bool,
              exclude_trivial: bool) -> List[SolutionInstance]:
    result = []
    for assignment in assignments:
        if P.evaluate(assignment) != 0:
            logger.error(f"向量化求解给出了错误的解 {assignment}，已丢弃")
            continue
        instance = SolutionInstance.of(assignment)
        if exclude_trivial and instance.trivial:
            continue
        if not allow_repeats and len(instance.values) < len(assignment):
            continue
        result.append(instance)
    return result


def enumerate_solutions(P: IntPolynomial, bound: int, allow_repeats: bool = True,
                        exclude_trivial: bool = False) -> List[SolutionInstance]:
    """枚举 [1..bound]^n 中 P = 0 的全部解

    对除一个变量外的变量逐片取值（最后一个自由变量向量化），剩下的单变量方程精确求解。

    Args:
        P: 多项式
        bound: 上界 N，至少为1
        allow_repeats: 是否允许坐标重复
        exclude_trivial: 是否排除常数解

    Returns:
        按字典序排列的解
    """
    if bound < 1:
        raise ValueError(f"上界必须至少为1: {bound}")
    solutions = _filtered(P, _box_solutions(P, range(1, bound + 1), bound), allow_repeats, exclude_trivial)
    logger.info(f"[1, {bound}]^{P.arity} 中共 {len(solutions)} 个解")
    return solutions


def monochromatic_solutions(P: IntPolynomial, colors: np.ndarray, bound: int,
                            allow_repeats: bool = True, exclude_trivial: bool = False) -> List[SolutionInstance]:
    """按颜色类分别枚举单色解，colors[v] 为 v 的颜色（下标0不用）"""
    found = []
    for color in sorted(set(int(c) for c in colors[1:bound + 1])):
        domain = np.nonzero(colors[:bound + 1] == color)[0]
        domain = domain[domain >= 1]
        found.extend(_box_solutions(P, domain, bound))
    found.sort()
    return _filtered(P, found, allow_repeats, exclude_trivial)


# ---- 参数化解族 ----

@dataclass(frozen=True)
class SolutionFamily:
    """可参数化的解族

    configuration: P = x^d(x − y) + p(x, z)，p 为 d 次齐次，解为 (r, r + p(1, s), rs)；
    squares: P = x² − y² + 4ax + 4by + 4cz，代入 x = r + s, y = r − s。
    """

    kind: str
    parameters: Dict[str, int] = field(default_factory=dict)
    polynomial: Optional[IntPolynomial] = field(default=None, compare=False)

    @classmethod
    def configuration(cls, coefficients: Sequence[int]) -> "SolutionFamily":
        """coefficients[i] 为 p(x, z) 中 x^{d−i} z^i 的系数，d = len(coefficients) − 1 ≥ 1"""
        coefficients = [int(c) for c in coefficients]
        d = len(coefficients) - 1
        if d < 1:
            raise ValueError("p(x, z) 的次数必须至少为1")
        terms = {(d + 1, 0, 0): 1, (d, 1, 0): -1}
        for i, c in enumerate(coefficients):
            key = (d - i, 0, i)
            terms[key] = terms.get(key, 0) + c
        parameters = {"d": d, **{f"a{i}": c for i, c in enumerate(coefficients)}}
        return cls(FAMILY_CONFIGURATION, parameters, IntPolynomial(3, terms))

    @classmethod
    def squares(cls, a: int, b: int, c: int) -> "SolutionFamily":
        if c == 0:
            raise UnsupportedPolynomialError("c = 0 时 z 不出现，代换无法确定 z")
        terms = {(2, 0, 0): 1, (0, 2, 0): -1, (1, 0, 0): 4 * a, (0, 1, 0): 4 * b, (0, 0, 1): 4 * c}
        return cls(FAMILY_SQUARES, {"a": a, "b": b, "c": c}, IntPolynomial(3, terms))

    def _point(self, r: int, s: int) -> Optional[Tuple[int, int, int]]:
        if self.kind == FAMILY_CONFIGURATION:
            d = self.parameters["d"]
            p_at = sum(self.parameters[f"a{i}"] * s ** i for i in range(d + 1))
            return r, r + p_at, r * s
        a, b, c = self.parameters["a"], self.parameters["b"], self.parameters["c"]
        z = Fraction(-(r * s + (a + b) * r + (a - b) * s), c)
        if z.denominator != 1:
            return None
        return r + s, r - s, z.numerator

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "parameters": dict(self.parameters),
                "polynomial": self.polynomial.to_text()}


def parametrized_solutions(family: SolutionFamily, r_range: Iterable[int],
                           s_range: Iterable[int]) -> List[SolutionInstance]:
    """在参数网格上生成解，只保留坐标全为正整数的点，每个都精确验证

    Args:
        family: 解族
        r_range: r 的取值
        s_range: s 的取值

    Returns:
        解列表，按 (r, s) 的顺序
    """
    s_values = list(s_range)
    result = []
    for r in r_range:
        for s in s_values:
            point = family._point(r, s)
            if point is None or min(point) < 1:
                continue
            if family.polynomial.evaluate(point) != 0:
                raise ArithmeticError(f"参数 (r, s) = ({r}, {s}) 给出的 {point} 不是解")
            result.append(SolutionInstance.of(point))
    logger.info(f"{family.kind} 族生成 {len(result)} 个解")
    return result
