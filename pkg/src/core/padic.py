"""
p进模块：判定整系数单变量多项式在 ℤ_p 中是否有可逆根，并用Hensel提升给出见证
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import sympy

from src.core.polynomial import MonovariatePoly, W
from src.errors import HenselLiftError
from src.utils.helpers import p_valuation

logger = logging.getLogger()

# 见证的最低精度
MIN_WITNESS_PRECISION = 6

# Newton迭代次数上限
MAX_NEWTON_STEPS = 256


@dataclass(frozen=True)
class PadicApprox:
    """ℤ_p 元素的有限精度近似：p 与精度 k 下的剩余类代表 0 ≤ residue < p^k"""

    p: int
    k: int
    residue: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"精度必须为正: {self.k}")
        object.__setattr__(self, "residue", self.residue % self.p ** self.k)

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def to_dict(self):
        return {"p": self.p, "k": self.k, "residue": self.residue}


@dataclass(frozen=True)
class UnitRootResult:
    """unit_root_exists 的结果，depth 为分支终止深度 K"""

    exists: bool
    witness: Optional[PadicApprox] = None
    depth: int = 0

    def to_dict(self):
        return {
            "exists": self.exists,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "depth": self.depth,
        }


def _check_prime(p: int) -> None:
    if not sympy.isprime(p):
        raise ValueError(f"p 必须为素数: {p}")


def squarefree_part(Q: MonovariatePoly) -> MonovariatePoly:
    """本原的无平方因子部分，与 Q 有相同的根"""
    poly = sympy.Poly(list(reversed(Q.primitive().coefficients)), W, domain=sympy.ZZ)
    return MonovariatePoly.from_sympy(poly.sqf_part()).primitive()


def branching_depth(Q0: MonovariatePoly, p: int) -> int:
    """K = 2·v_p(Res(Q0, Q0′)) + 1，Q0 须无平方因子且次数至少为1"""
    resultant = sympy.resultant(Q0.to_sympy().as_expr(), Q0.derivative().to_sympy().as_expr(), W)
    return 2 * p_valuation(int(resultant), p) + 1


def hensel_criterion(Q: MonovariatePoly, r: int, p: int) -> bool:
    """v_p(Q(r)) > 2·v_p(Q′(r))；Q(r) = 0 时视为成立"""
    value = Q.evaluate(r)
    if value == 0:
        return True
    return p_valuation(value, p) > 2 * p_valuation(Q.derivative().evaluate(r), p)


def hensel_lift(Q: MonovariatePoly, r0: PadicApprox, k: int) -> PadicApprox:
    """从满足Hensel判据的 r0 出发做Newton迭代，直到 Q(r) ≡ 0 (mod p^k)

    Args:
        Q: 单变量整系数多项式
        r0: 初始近似
        k: 目标精度

    Returns:
        精度为 k 的近似根
    """
    p = r0.p
    r = r0.residue
    if not hensel_criterion(Q, r, p):
        raise HenselLiftError(f"Hensel判据在 r = {r} (mod {p}^{r0.k}) 处不成立: {Q.to_text()}")
    if Q.evaluate(r) == 0:
        return PadicApprox(p, k, r)

    derivative = Q.derivative()
    s = p_valuation(derivative.evaluate(r), p)
    modulus = p ** (k + 2 * s + 1)
    target = p ** k
    for _ in range(MAX_NEWTON_STEPS):
        value = Q.evaluate(r)
        if value % target == 0:
            return PadicApprox(p, k, r)
        slope = derivative.evaluate(r)
        unit = slope // p ** s
        correction = (value // p ** s) * pow(unit, -1, modulus)
        r = (r - correction) % modulus
    raise HenselLiftError(f"Newton迭代在 {MAX_NEWTON_STEPS} 步内未达到精度 {k}")


@lru_cache(maxsize=4096)
def _unit_root(coefficients: Tuple[int, ...], p: int) -> UnitRootResult:
    Q = MonovariatePoly(coefficients)
    if Q.is_zero():
        return UnitRootResult(True, PadicApprox(p, MIN_WITNESS_PRECISION, 1), 0)
    Q0 = squarefree_part(Q)
    if Q0.degree < 1:
        return UnitRootResult(False, None, 0)

    K = branching_depth(Q0, p)
    precision = max(MIN_WITNESS_PRECISION, K + 1)
    level = [r for r in range(1, p) if Q0.evaluate(r) % p == 0]
    depth = 1
    while level:
        for r in level:
            if hensel_criterion(Q0, r, p):
                witness = hensel_lift(Q0, PadicApprox(p, depth, r), precision)
                logger.debug(f"{Q.to_text()} 在 ℤ_{p} 中有可逆根，见证 {witness.residue} (mod {p}^{precision})")
                return UnitRootResult(True, witness, K)
        if depth >= K:
            break
        step = p ** depth
        modulus = step * p
        level = [r + i * step for r in level for i in range(p)
                 if Q0.evaluate(r + i * step) % modulus == 0]
        depth += 1
    return UnitRootResult(False, None, K)


def unit_root_exists(Q: MonovariatePoly, p: int) -> UnitRootResult:
    """判定 Q(w) = 0 在 ℤ_p 中是否有可逆解

    恒为零的 Q 直接返回存在（见证为1）。否则在无平方因子部分上按剩余类逐层细分，
    满足Hensel判据即接受，分支深度不超过 K = 2·v_p(Res(Q0, Q0′)) + 1。

    Args:
        Q: 单变量整系数多项式
        p: 素数

    Returns:
        UnitRootResult
    """
    _check_prime(p)
    return _unit_root(Q.coefficients, p)
