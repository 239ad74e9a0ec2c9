"""
已知方程族的识别

识别两类二次族 x² − xy + ax + by + cz 与 x² − y² + ax + by + cz（允许变量重命名与整体变号），
在 abc = 0 或 a + b + c = 0 的前提下直接给出结论；另外识别 x^d(x − y) + p(x, z)
这一可参数化的族，以及尚未解决的几种情形。
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.core.polynomial import IntPolynomial

logger = logging.getLogger()

FAMILY_PRODUCT = "x^2 - x*y + a*x + b*y + c*z"
FAMILY_SQUARES = "x^2 - y^2 + a*x + b*y + c*z"
FAMILY_CONFIGURATION = "x^d*(x - y) + p(x, z)"

PARTITION_REGULAR = "PartitionRegular"
NOT_PARTITION_REGULAR = "NotPartitionRegular"

_LINEAR = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class FamilyMatch:
    """族识别结果；verdict 为 None 表示未能定论（no-match）"""

    matched: bool
    family: Optional[str] = None
    parameters: Dict[str, int] = field(default_factory=dict)
    verdict: Optional[str] = None
    reason: str = ""
    note: str = ""
    renaming: Tuple[int, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "matched": self.matched,
            "family": self.family,
            "parameters": dict(self.parameters),
            "verdict": self.verdict,
            "reason": self.reason,
            "note": self.note,
            "renaming": list(self.renaming),
        }


NO_MATCH = FamilyMatch(False)


def _variants(P: IntPolynomial):
    """补到3个变量后，按固定顺序给出所有 (重命名, 符号, 多项式)"""
    if P.arity > 3:
        return
    Q = P.with_arity(3)
    for order in itertools.permutations(range(3)):
        renamed = Q.rename(order)
        for sign in (1, -1):
            yield order, sign, renamed * sign


def _quadratic_parameters(Q: IntPolynomial, quadratic: Dict[Tuple[int, ...], int]) -> Optional[Tuple[int, int, int]]:
    allowed = set(quadratic) | set(_LINEAR)
    if any(alpha.exponents not in allowed for alpha in Q.support()):
        return None
    if any(Q.coefficient(index) != c for index, c in quadratic.items()):
        return None
    return tuple(Q.coefficient(index) for index in _LINEAR)


def _is_open_problem(a: int, b: int, c: int) -> bool:
    if 0 in (a, b, c, a + b + c):
        return False
    return 0 in (a + b, a + c, b + c)


def _literal_open_form(Q: IntPolynomial) -> Optional[Tuple[int, int]]:
    """x(x − y) − xy + a(x − y) + bz，返回 (a, b)"""
    allowed = {(2, 0, 0), (1, 1, 0)} | set(_LINEAR)
    if any(alpha.exponents not in allowed for alpha in Q.support()):
        return None
    if Q.coefficient((2, 0, 0)) != 1 or Q.coefficient((1, 1, 0)) != -2:
        return None
    a = Q.coefficient((1, 0, 0))
    if Q.coefficient((0, 1, 0)) != -a:
        return None
    b = Q.coefficient((0, 0, 1))
    if a == 0 or b == 0:
        return None
    return a, b


def _decide_product(a: int, b: int, c: int) -> Tuple[str, str]:
    if a + b + c == 0:
        return PARTITION_REGULAR, "对角多项式恒为零，族内 a + b + c = 0 的情形均正则"
    if a == 0 and b == 0:
        return PARTITION_REGULAR, "化为 x(x − y) + cz，由 x^d(x − y) + p(x, z) 族的参数解得到"
    return NOT_PARTITION_REGULAR, "极小Rado集都是一次齐次的，系数和非零，极小Rado条件不成立"


def _decide_squares(a: int, b: int, c: int) -> Tuple[str, str]:
    if a == 0 and b == 0:
        return PARTITION_REGULAR, "{x², y²} 是系数和为零的极小Rado集，极小Rado条件成立"
    if a + b + c == 0:
        if a + b == 0:
            return PARTITION_REGULAR, "化为 (x − y)(x + y + a) = 0，有常数解 x = y"
        return PARTITION_REGULAR, "代换 x = r + s, y = r − s 后由 xy + x + dy 型构型得到"
    return NOT_PARTITION_REGULAR, "极小Rado集都是一次齐次的，系数和非零，极小Rado条件不成立"


def _configuration_match(Q: IntPolynomial) -> Optional[Tuple[int, Dict[str, int]]]:
    """匹配 x^d(x − y) + p(x, z)，p 为 d 次齐次；返回 (d, {a_0..a_d})"""
    y_terms = [alpha for alpha in Q.support() if alpha.exponents[1] > 0]
    if len(y_terms) != 1:
        return None
    alpha = y_terms[0]
    d = alpha.exponents[0]
    if d < 1 or alpha.exponents != (d, 1, 0) or Q.coefficient(alpha) != -1:
        return None
    rest = Q - IntPolynomial(3, {(d + 1, 0, 0): 1, (d, 1, 0): -1})
    if any(beta.degree != d for beta in rest.support()):
        return None
    # rest 中 y 不出现，且全部为 d 次
    coefficients = {f"a{i}": rest.coefficient((d - i, 0, i)) for i in range(d + 1)}
    return d, coefficients


def classify_family(P: IntPolynomial) -> FamilyMatch:
    """把多项式与已知族比对

    Args:
        P: 多项式

    Returns:
        FamilyMatch；能定论时 verdict 为 PartitionRegular 或 NotPartitionRegular
    """
    if P.is_zero() or P.arity > 3:
        return NO_MATCH

    families = (
        (FAMILY_PRODUCT, {(2, 0, 0): 1, (1, 1, 0): -1}, _decide_product),
        (FAMILY_SQUARES, {(2, 0, 0): 1, (0, 2, 0): -1}, _decide_squares),
    )
    for family, quadratic, decide in families:
        for order, sign, Q in _variants(P):
            parameters = _quadratic_parameters(Q, quadratic)
            if parameters is None:
                continue
            a, b, c = parameters
            values = {"a": a, "b": b, "c": c}
            if _is_open_problem(a, b, c):
                logger.info(f"{P.to_text()} 属于尚未解决的情形 ({family}, a={a}, b={b}, c={c})")
                return FamilyMatch(False, family, values, None, "", "open problem", order)
            if a * b * c != 0 and a + b + c != 0:
                return FamilyMatch(False, family, values, None, "", "outside the family hypothesis", order)
            verdict, reason = decide(a, b, c)
            logger.info(f"{P.to_text()} 匹配 {family} (a={a}, b={b}, c={c})：{verdict}")
            return FamilyMatch(True, family, values, verdict, reason, "", order)

    for order, sign, Q in _variants(P):
        literal = _literal_open_form(Q)
        if literal is not None:
            a, b = literal
            return FamilyMatch(False, "x*(x - y) - x*y + a*(x - y) + b*z", {"a": a, "b": b},
                               None, "", "open problem", order)

    for order, sign, Q in _variants(P):
        found = _configuration_match(Q)
        if found is None:
            continue
        d, coefficients = found
        at_zero = coefficients["a0"]
        at_one = sum(coefficients.values())
        parameters = {"d": d, **coefficients}
        if at_zero == 0:
            return FamilyMatch(True, FAMILY_CONFIGURATION, parameters, PARTITION_REGULAR,
                               "p(1, 0) = 0，参数解 (r, r + p(1, s), rs) 落在 {x, x + p(y), xy} 型构型中", "", order)
        if at_one == 0:
            return FamilyMatch(True, FAMILY_CONFIGURATION, parameters, PARTITION_REGULAR,
                               "p(1, 1) = 0，参数解落在 {x + p(y), x + q(y), xy + x + dy} 型构型中", "", order)
    return NO_MATCH
