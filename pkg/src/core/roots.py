"""
根分析模块：区间上实根的存在性（Sturm序列）、整数根与线性分裂、加权单变量多项式
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import sympy

from src.core.functionals import CandidateFunctional
from src.core.polynomial import IntPolynomial, MonovariatePoly
from src.errors import UnsupportedPolynomialError

logger = logging.getLogger()

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Interval:
    """闭区间 [lo, hi]，端点为有理数"""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"区间端点顺序错误: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, value: Number) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class IntegerRoots:
    """整数根（含重数，升序）以及是否在 ℤ 上分裂为一次因子之积"""

    roots: Tuple[int, ...]
    splits_linearly: bool

    def distinct(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.roots)))


def weighted_polynomial(P: IntPolynomial, candidate: CandidateFunctional, base: int) -> MonovariatePoly:
    """Σ_{i=0}^{m} base^{d_i} Σ_{α∈J_i} c_α w^{|α|}

    块 J_i 与指数 d_i 按泛函类型的约定取：下泛函 d_0 = 0，上泛函 d_m = 0。

    Args:
        P: 多项式（极小条件中传入平移后的多项式）
        candidate: 候选泛函
        base: 底数，至少为2

    Returns:
        单变量多项式
    """
    if base < 2:
        raise ValueError(f"底数必须至少为2: {base}")
    coefficients = [0] * (max(P.total_degree(), 0) + 1)
    exponents = candidate.weight_exponents()
    for cell, exponent in zip(candidate.rado_cells(), exponents):
        weight = base ** exponent
        for alpha in cell:
            coefficients[alpha.degree] += weight * P.coefficient(alpha)
    return MonovariatePoly(tuple(coefficients))


def cell_polynomial(P: IntPolynomial, cell: Sequence) -> MonovariatePoly:
    """单个块的 Σ_{α∈J} c_α w^{|α|}，即阶为0时的加权多项式"""
    coefficients = [0] * (max(P.total_degree(), 0) + 1)
    for alpha in cell:
        coefficients[alpha.degree] += P.coefficient(alpha)
    return MonovariatePoly(tuple(coefficients))


def _sign_variations(chain: List[sympy.Poly], point: sympy.Rational) -> int:
    signs = [sympy.sign(p.eval(point)) for p in chain]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def has_real_root_in(Q: MonovariatePoly, interval: Interval) -> bool:
    """用Sturm序列精确判定 Q 在闭区间上是否有实根

    恒为零的 Q 视为有根。

    Args:
        Q: 单变量整系数多项式
        interval: 闭区间

    Returns:
        是否有根
    """
    if Q.is_zero():
        return True
    if Q.degree == 0:
        return False
    if Q.evaluate(interval.lo) == 0 or Q.evaluate(interval.hi) == 0:
        return True
    if interval.lo == interval.hi:
        return False
    chain = sympy.sturm(Q.to_sympy())
    lo = sympy.Rational(interval.lo.numerator, interval.lo.denominator)
    hi = sympy.Rational(interval.hi.numerator, interval.hi.denominator)
    count = _sign_variations(chain, lo) - _sign_variations(chain, hi)
    logger.debug(f"{Q.to_text()} 在 [{interval.lo}, {interval.hi}] 内有 {count} 个不同实根")
    return count > 0


def integer_roots(Q: MonovariatePoly) -> IntegerRoots:
    """求全部整数根（含重数），并判断是否分裂为一次因子之积

    候选根取常数项的正负因子，逐个用综合除法验证，能整除就反复除。

    Args:
        Q: 非零单变量多项式

    Returns:
        整数根与分裂标志
    """
    if Q.is_zero():
        raise UnsupportedPolynomialError("零多项式的根不确定")
    coefficients = list(Q.coefficients)
    roots: List[int] = []
    while coefficients[0] == 0:
        coefficients.pop(0)
        roots.append(0)

    remaining = MonovariatePoly(tuple(coefficients))
    if remaining.degree > 0:
        trailing = abs(remaining.coefficients[0])
        candidates = sorted({s * d for d in sympy.divisors(trailing) for s in (1, -1)})
        for r in candidates:
            while remaining.degree > 0:
                quotient, rest = _divide_linear(remaining, r)
                if rest != 0:
                    break
                roots.append(r)
                remaining = quotient
    roots.sort()
    return IntegerRoots(tuple(roots), remaining.degree == 0)


def _divide_linear(Q: MonovariatePoly, r: int) -> Tuple[MonovariatePoly, int]:
    """综合除法：Q = (w − r)·商 + 余数"""
    quotient = []
    carry = 0
    for c in reversed(Q.coefficients):
        carry = carry * r + c
        quotient.append(carry)
    remainder = quotient.pop()
    return MonovariatePoly(tuple(reversed(quotient))), remainder
