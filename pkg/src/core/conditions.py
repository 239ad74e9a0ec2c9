"""
Rado条件检验模块

极大条件按底数 q、极小条件按素数 p 逐个检验；只有结构性论证封闭了无穷量词时才给出
“确定失败”，有限范围内的失败只作为警告。analyze 汇总所有路线给出三值结论。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import sympy

from src.config import Config, config
from src.core.families import FamilyMatch, classify_family, NOT_PARTITION_REGULAR, PARTITION_REGULAR
from src.core.functionals import (
    LOWER, UPPER, CandidateFunctional, FunctionalShape, brauer_certificate, minimal_cells,
    shape_offsets, surviving_shapes,
)
from src.core.padic import PadicApprox, unit_root_exists
from src.core.polynomial import IntPolynomial, MonovariatePoly, diagonal, shift
from src.core.roots import Interval, IntegerRoots, has_real_root_in, integer_roots, weighted_polynomial
from src.errors import UnsupportedPolynomialError
from src.utils.helpers import has_zero_subset_sum

logger = logging.getLogger()

INCONCLUSIVE = "Inconclusive"

HOLDS = "holds"
FAILS_WITHIN_BOUNDS = "fails-within-bounds"
FAILS_DEFINITIVELY = "fails-definitively"


@dataclass(frozen=True)
class AnalysisConfig:
    """条件检验的搜索范围与证书参数"""

    q_max: int = 7
    p_max: int = 13
    d_max: int = 6
    j_max: int = 4
    e_min: int = -4
    e_max: int = 4
    max_certificates: int = 8

    @classmethod
    def from_config(cls, cfg: Optional[Config] = None) -> "AnalysisConfig":
        """从全局配置（或给定的配置对象）读取参数"""
        params = (cfg or config).get_analysis_params()
        known = {name: int(params[name]) for name in cls.__dataclass_fields__ if name in params}
        return cls(**known)

    def to_dict(self) -> Dict:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class MaximalResult:
    """某个底数 q 上极大条件的检验结果"""

    q: int
    status: str
    candidate: Optional[CandidateFunctional] = None
    polynomial: Optional[MonovariatePoly] = None
    audited: int = 0

    def to_dict(self) -> Dict:
        return {
            "q": self.q,
            "status": self.status,
            "candidate": None if self.candidate is None else self.candidate.to_dict(),
            "polynomial": None if self.polynomial is None else self.polynomial.to_text(),
            "audited": self.audited,
        }


@dataclass(frozen=True)
class MinimalResult:
    """某个素数 p 上极小条件的检验结果"""

    p: int
    status: str
    root: Optional[int] = None
    candidate: Optional[CandidateFunctional] = None
    polynomial: Optional[MonovariatePoly] = None
    witness: Optional[PadicApprox] = None
    audited: int = 0

    def to_dict(self) -> Dict:
        return {
            "p": self.p,
            "status": self.status,
            "root": self.root,
            "candidate": None if self.candidate is None else self.candidate.to_dict(),
            "polynomial": None if self.polynomial is None else self.polynomial.to_text(),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "audited": self.audited,
        }


@dataclass
class Verdict:
    """三值结论及其全部证据"""

    outcome: str
    route: Dict = field(default_factory=dict)
    routes: List[Dict] = field(default_factory=list)
    family: Optional[FamilyMatch] = None
    maximal: Dict[int, MaximalResult] = field(default_factory=dict)
    minimal: Dict[int, MinimalResult] = field(default_factory=dict)
    certificates: List[CandidateFunctional] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "verdict": self.outcome,
            "route": self.route,
            "routes": self.routes,
            "family": None if self.family is None else self.family.to_dict(),
            "maximal": [self.maximal[q].to_dict() for q in sorted(self.maximal)],
            "minimal": [self.minimal[p].to_dict() for p in sorted(self.minimal)],
            "certificates": [c.to_dict() for c in self.certificates],
            "notes": list(self.notes),
            "warnings": list(self.warnings),
        }


def _order_zero(shape: FunctionalShape) -> CandidateFunctional:
    return CandidateFunctional(shape.kind, shape.partition, 0, (), shape=shape)


def _candidates(shapes: Iterable[FunctionalShape], d_max: int) -> List[CandidateFunctional]:
    result = []
    for shape in shapes:
        for offsets in shape_offsets(shape, d_max):
            result.append(CandidateFunctional(shape.kind, shape.partition, shape.order, offsets, shape=shape))
    return result


def check_maximal(P: IntPolynomial, q_set: Iterable[int], d_max: int) -> Dict[int, MaximalResult]:
    """逐个底数检验极大Rado条件

    所有通过过滤的上形状都是0阶时，加权多项式与偏移无关，失败即为确定失败；
    否则只检验偏移不超过 d_max 的候选，失败记为有限范围内失败。

    Args:
        P: 非零多项式
        q_set: 底数集合，每个至少为2
        d_max: 偏移上限

    Returns:
        q 到检验结果的映射
    """
    q_list = sorted(set(q_set))
    if not q_list:
        raise ValueError("q_set 不能为空")
    if q_list[0] < 2:
        raise ValueError(f"底数必须至少为2: {q_list[0]}")
    if d_max < 1:
        raise ValueError(f"d_max 必须至少为1: {d_max}")
    if P.is_zero():
        raise UnsupportedPolynomialError("零多项式不适用极大Rado条件")

    shapes = surviving_shapes(P, UPPER)
    closed = all(shape.order == 0 for shape in shapes)
    candidates = [_order_zero(shape) for shape in shapes] if closed else _candidates(shapes, d_max)
    logger.info(f"极大条件：{len(shapes)} 个上形状通过过滤，{len(candidates)} 个候选"
                f"{'（与偏移无关）' if closed else ''}")

    results = {}
    for q in q_list:
        interval = Interval(1, q)
        found = None
        for candidate in candidates:
            Q = weighted_polynomial(P, candidate, q)
            if has_real_root_in(Q, interval):
                found = MaximalResult(q, HOLDS, candidate, Q, len(candidates))
                break
        if found is None:
            status = FAILS_DEFINITIVELY if closed else FAILS_WITHIN_BOUNDS
            found = MaximalResult(q, status, audited=len(candidates))
        logger.debug(f"q = {q}: {found.status}")
        results[q] = found
    return results


def _split_roots(P: IntPolynomial) -> IntegerRoots:
    P_tilde = diagonal(P)
    if P_tilde.is_zero():
        raise UnsupportedPolynomialError("对角多项式恒为零，极小Rado条件不适用")
    roots = integer_roots(P_tilde)
    if not roots.splits_linearly:
        raise UnsupportedPolynomialError(f"对角多项式 {P_tilde.to_text()} 在 ℤ 上不分裂为一次因子")
    return roots


def check_minimal(P: IntPolynomial, primes: Iterable[int], d_max: int) -> Dict[int, MinimalResult]:
    """逐个素数检验极小Rado条件

    Args:
        P: 对角多项式非零且在 ℤ 上分裂的多项式
        primes: 素数集合
        d_max: 偏移上限

    Returns:
        p 到检验结果的映射
    """
    p_list = sorted(set(primes))
    if not p_list:
        raise ValueError("primes 不能为空")
    for p in p_list:
        if not sympy.isprime(p):
            raise ValueError(f"p 必须为素数: {p}")
    if d_max < 1:
        raise ValueError(f"d_max 必须至少为1: {d_max}")
    roots = _split_roots(P)

    per_root = []
    closed = True
    for a in roots.distinct():
        shifted = shift(P, a)
        shapes = surviving_shapes(shifted, LOWER)
        closed = closed and all(shape.order == 0 for shape in shapes)
        per_root.append((a, shifted, shapes))
    audit = []
    for a, shifted, shapes in per_root:
        candidates = [_order_zero(s) for s in shapes] if closed else _candidates(shapes, d_max)
        audit.append((a, shifted, candidates))
    total = sum(len(candidates) for _, _, candidates in audit)
    logger.info(f"极小条件：整数根 {list(roots.distinct())}，{total} 个候选"
                f"{'（与偏移无关）' if closed else ''}")

    results = {}
    for p in p_list:
        found = None
        for a, shifted, candidates in audit:
            for candidate in candidates:
                Q = weighted_polynomial(shifted, candidate, p)
                outcome = unit_root_exists(Q, p)
                if outcome.exists:
                    found = MinimalResult(p, HOLDS, a, candidate, Q, outcome.witness, total)
                    break
            if found is not None:
                break
        if found is None:
            status = FAILS_DEFINITIVELY if closed else FAILS_WITHIN_BOUNDS
            found = MinimalResult(p, status, audited=total)
        logger.debug(f"p = {p}: {found.status}")
        results[p] = found
    return results


def minimal_failure_audit(P: IntPolynomial) -> List[Dict]:
    """每个整数根 a 下 P^(a) 的全部极小块，用于报告"""
    audit = []
    for a in _split_roots(P).distinct():
        cells = minimal_cells(shift(P, a))
        audit.append({"root": a, "cells": [cell.to_dict() for cell in cells]})
    return audit


def definitive_minimal_failure(P: IntPolynomial) -> bool:
    """对角多项式的每个整数根 a 下，P^(a) 的极小块是否都齐次且系数和非零

    成立时极小Rado条件对所有素数都失败。对角多项式恒为零时返回False。

    Args:
        P: 多项式

    Returns:
        是否确定失败
    """
    if diagonal(P).is_zero():
        return False
    for a in _split_roots(P).distinct():
        for cell in minimal_cells(shift(P, a)):
            if not cell.homogeneous or cell.coefficient_sum == 0:
                logger.debug(f"根 {a} 下的极小块 {cell.cell} 不能排除")
                return False
    return True


def _linear_homogeneous(P: IntPolynomial) -> bool:
    return not P.is_zero() and all(alpha.degree == 1 for alpha in P.support())


def _collect_certificates(results: Iterable, settings: AnalysisConfig) -> List[CandidateFunctional]:
    seen = set()
    certified = []
    for result in results:
        candidate = result.candidate
        if candidate is None or candidate.sort_key() in seen:
            continue
        seen.add(candidate.sort_key())
        if len(seen) > settings.max_certificates:
            break
        certificate = brauer_certificate(candidate, settings.j_max, (settings.e_min, settings.e_max))
        if certificate is not None:
            certified.append(candidate.with_certificate(certificate))
    return certified


def analyze(P: IntPolynomial, settings: Optional[AnalysisConfig] = None) -> Verdict:
    """综合各条路线给出结论

    顺序：已知族、常数解、齐次线性方程的Rado判据、极小条件的确定失败、
    各底数的极大条件、各素数的极小条件。任何确定失败都给出 NotPartitionRegular。

    Args:
        P: 多项式
        settings: 检验参数，默认取全局配置

    Returns:
        Verdict
    """
    settings = settings or AnalysisConfig.from_config()
    logger.info(f"分析 {P.to_text()}")

    if P.is_zero():
        route = {"type": "constant-solutions", "detail": "零多项式，任意取值都是解"}
        return Verdict(PARTITION_REGULAR, route, [route])

    family = classify_family(P)
    if family.matched and family.verdict is not None:
        route = {"type": "family", "family": family.family, "parameters": dict(family.parameters),
                 "reason": family.reason}
        return Verdict(family.verdict, route, [route], family=family)

    verdict = Verdict(INCONCLUSIVE, family=family if family.family else None)
    if family.note:
        verdict.notes.append(f"{family.family}: {family.note}")

    if diagonal(P).is_zero():
        route = {"type": "constant-solutions", "detail": "对角多项式恒为零，常数组都是解"}
        verdict.outcome, verdict.route = PARTITION_REGULAR, route
        verdict.routes.append(route)
        return verdict

    if _linear_homogeneous(P):
        coefficients = [c for _, c in P.items()]
        if has_zero_subset_sum(coefficients):
            route = {"type": "linear-rado", "coefficients": coefficients,
                     "detail": "齐次线性方程，存在和为零的非空系数子集"}
            verdict.outcome, verdict.route = PARTITION_REGULAR, route
            verdict.routes.append(route)
            return verdict

    minimal_applicable = P.constant_term() == 0
    roots = None
    if not minimal_applicable:
        verdict.notes.append("多项式有非零常数项，跳过极小Rado条件")
    else:
        roots = integer_roots(diagonal(P))
        if not roots.splits_linearly:
            verdict.notes.append("对角多项式在 ℤ 上不分裂为一次因子，极小Rado条件没有定义")
            minimal_applicable = False

    if minimal_applicable and definitive_minimal_failure(P):
        verdict.routes.append({"type": "minimal-definitive", "roots": list(roots.distinct()),
                               "audit": minimal_failure_audit(P)})

    verdict.maximal = check_maximal(P, range(2, settings.q_max + 1), settings.d_max)
    failed_q = [q for q, r in verdict.maximal.items() if r.status == FAILS_DEFINITIVELY]
    if failed_q:
        verdict.routes.append({"type": "maximal", "q": failed_q})
    bounded_q = [q for q, r in verdict.maximal.items() if r.status == FAILS_WITHIN_BOUNDS]
    if bounded_q:
        verdict.warnings.append(f"极大条件在 q = {bounded_q} 处仅在 d_max = {settings.d_max} 范围内失败，不构成否定")

    if minimal_applicable:
        primes = list(sympy.primerange(2, settings.p_max + 1))
        verdict.minimal = check_minimal(P, primes, settings.d_max)
        failed_p = [p for p, r in verdict.minimal.items() if r.status == FAILS_DEFINITIVELY]
        if failed_p:
            verdict.routes.append({"type": "minimal-prime", "primes": failed_p})
        bounded_p = [p for p, r in verdict.minimal.items() if r.status == FAILS_WITHIN_BOUNDS]
        if bounded_p:
            verdict.warnings.append(f"极小条件在 p = {bounded_p} 处仅在 d_max = {settings.d_max} 范围内失败，不构成否定")

    holding = [r for r in verdict.maximal.values() if r.status == HOLDS]
    holding += [r for r in verdict.minimal.values() if r.status == HOLDS]
    verdict.certificates = _collect_certificates(holding, settings)

    if verdict.routes:
        verdict.outcome = NOT_PARTITION_REGULAR
        verdict.route = verdict.routes[0]
    else:
        verdict.notes.append("两个Rado条件在检验范围内都未被否定，它们是否充分尚无定论")
    logger.info(f"结论: {verdict.outcome}")
    for warning in verdict.warnings:
        logger.warning(warning)
    return verdict
